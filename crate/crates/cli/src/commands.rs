use std::fmt::Write as _;
use std::path::Path;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use secrecy_lab::bounds::{mac_bound, wth_bound, MacBoundCase};
use secrecy_lab::gdof::{
    gauss_rate_for, normalized_achievable, normalized_bound, normalized_curve, GaussRateBreakdown, RemainderCase,
    SnrParams,
};
use secrecy_lab::ldm::{LdParams, Tx};
use secrecy_lab::schemes::{build_allocation, rate as ld_rate, Model};
use secrecy_lab::verify::{grid_certify, lemma_sweep, mutation_suite, DEFAULT_BUDGET};

use crate::config::Config;
use crate::format::{exact, g12, rational_g12, ExactReal};
use crate::{BoundArgs, CliError, Common, Format, RateArgs, RateKind, SweepArgs, VerifyArgs, VerifyTarget};

const CSV_HEADER: &str = "beta1,achievable_norm,bound_norm,model,beta2";
const MAX_ROWS: i64 = 1_000_000;

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn f(x: Rational64) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn ld_params(cfg: &Config, n1: Option<u32>, n2: Option<u32>, ne: Option<u32>) -> Result<LdParams, CliError> {
    Ok(LdParams::new(
        cfg.require(n1, "n1")?,
        cfg.require(n2, "n2")?,
        cfg.require(ne, "ne")?,
    ))
}

fn nonnegative(x: ExactReal, key: &str) -> Result<Rational64, CliError> {
    if x.is_negative() {
        return Err(CliError::Usage(format!("--{key} must be >= 0")));
    }
    Ok(x.0)
}

pub(crate) fn rate(common: &Common, cfg: &Config, a: RateArgs) -> Result<(), CliError> {
    let kind: RateKind = cfg
        .pick(a.kind, "kind")?
        .ok_or_else(|| CliError::Usage("missing rate kind: ld-wth, ld-mac, g-wth or g-mac".into()))?;
    let text = match kind {
        RateKind::LdWth | RateKind::LdMac => {
            let model = if kind == RateKind::LdWth { Model::WiretapHelper } else { Model::MacWiretap };
            ld_rate_text(common.format, model, ld_params(cfg, a.n1, a.n2, a.ne)?)?
        }
        RateKind::GWth | RateKind::GMac => {
            let model = if kind == RateKind::GWth { Model::WiretapHelper } else { Model::MacWiretap };
            let snr1 = match (cfg.pick(a.snr1, "snr1")?, cfg.pick(a.snr1_db, "snr1-db")?) {
                (Some(s), None) => s,
                (None, Some(db)) => 10f64.powf(db / 10.0),
                _ => return Err(CliError::Usage("give exactly one of --snr1 and --snr1-db".into())),
            };
            let beta1 = nonnegative(cfg.require(a.beta1, "beta1")?, "beta1")?;
            let beta2 = nonnegative(cfg.require(a.beta2, "beta2")?, "beta2")?;
            let p = SnrParams::with_exponents(snr1, beta1, beta2)?;
            gauss_rate_text(common.format, model, &p)?
        }
    };
    write_out(common.out.as_deref(), &text)
}

fn ld_rate_text(format: Option<Format>, model: Model, p: LdParams) -> Result<String, CliError> {
    let r = ld_rate(model, &p)?;
    let alloc = build_allocation(model, &p)?;
    let (tx1, tx2) = (alloc.pattern(Tx::One), alloc.pattern(Tx::Two));
    Ok(match format {
        Some(Format::Json) => json_text(&json!({
            "model": model.to_string(),
            "n1": p.n1, "n2": p.n2, "ne": p.ne,
            "private": r.private, "common": r.common, "remainder": r.remainder, "total": r.total,
            "tx1": tx1, "tx2": tx2,
        })),
        Some(Format::Csv) => format!(
            "model,n1,n2,ne,private,common,remainder,total,tx1,tx2\n{model},{},{},{},{},{},{},{},{tx1},{tx2}\n",
            p.n1, p.n2, p.ne, r.private, r.common, r.remainder, r.total
        ),
        None => format!(
            "{model} {p}\n  private    {}\n  common     {}\n  remainder  {}\n  total      {}\n  tx1        {tx1}\n  tx2        {tx2}\n",
            r.private, r.common, r.remainder, r.total
        ),
    })
}

fn case_name(c: RemainderCase) -> &'static str {
    match c {
        RemainderCase::Partial => "partial",
        RemainderCase::FullLayer => "full-layer",
        RemainderCase::Idle => "idle",
        RemainderCase::Excess => "excess",
        RemainderCase::FullLayerPlusPartial => "full-layer-plus-partial",
    }
}

fn gauss_rate_text(format: Option<Format>, model: Model, p: &SnrParams) -> Result<String, CliError> {
    let r: GaussRateBreakdown = gauss_rate_for(model, p)?;
    let norm = normalized_achievable(model, p.beta1(), p.beta2())?;
    let fields: [(&str, f64); 6] = [
        ("r_p", r.r_p),
        ("r_c", r.r_c),
        ("r_r", r.r_r),
        ("r_r1", r.r_r1),
        ("r_r2", r.r_r2),
        ("total", r.total),
    ];
    Ok(match format {
        Some(Format::Json) => {
            let mut v = json!({
                "model": model.to_string(),
                "snr1": p.snr1(),
                "beta1": f(p.beta1()), "beta1_exact": p.beta1().to_string(),
                "beta2": f(p.beta2()), "beta2_exact": p.beta2().to_string(),
                "l_u": r.l_u,
                "remainder_case": case_name(r.case),
                "normalized": f(norm), "normalized_exact": norm.to_string(),
            });
            for (k, x) in fields {
                v[k] = json!(x);
            }
            json_text(&v)
        }
        Some(Format::Csv) => {
            let mut s = String::from("model,snr1,beta1,beta2,r_p,r_c,r_r,r_r1,r_r2,total,l_u,remainder_case,normalized\n");
            let nums: Vec<String> = fields.iter().map(|&(_, x)| g12(x)).collect();
            let _ = writeln!(
                s,
                "{model},{},{},{},{},{},{},{}",
                g12(p.snr1()),
                rational_g12(p.beta1()),
                rational_g12(p.beta2()),
                nums.join(","),
                r.l_u,
                case_name(r.case),
                rational_g12(norm)
            );
            s
        }
        None => {
            let mut s = format!(
                "{model} Gaussian, SNR1 = {} ({} dB), beta1 = {}, beta2 = {}\n",
                g12(p.snr1()),
                g12(10.0 * p.snr1().log10()),
                exact(p.beta1()),
                exact(p.beta2())
            );
            for (k, x) in fields {
                let _ = writeln!(s, "  {k:<16}{}", g12(x));
            }
            let _ = writeln!(s, "  {:<16}{}", "l_u", r.l_u);
            let _ = writeln!(s, "  {:<16}{}", "remainder case", case_name(r.case));
            let _ = writeln!(s, "  {:<16}{}", "normalized", exact(norm));
            s
        }
    })
}

pub(crate) fn bound(common: &Common, cfg: &Config, a: BoundArgs) -> Result<(), CliError> {
    let model: Model = cfg.require(a.model, "model")?;
    let n1 = cfg.pick(a.n1, "n1")?;
    let text = if n1.is_some() {
        let p = ld_params(cfg, n1, a.n2, a.ne)?;
        ld_bound_text(common.format, model, p)
    } else {
        let beta1 = cfg.pick(a.beta1, "beta1")?;
        let beta2 = cfg.pick(a.beta2, "beta2")?;
        let (Some(b1), Some(b2)) = (beta1, beta2) else {
            return Err(CliError::Usage("give --n1 --n2 --ne or --beta1 --beta2".into()));
        };
        let b = normalized_bound(model, nonnegative(b1, "beta1")?, nonnegative(b2, "beta2")?);
        match common.format {
            Some(Format::Json) => json_text(&json!({
                "model": model.to_string(),
                "beta1": f(b1.0), "beta2": f(b2.0),
                "bound_norm": f(b), "bound_norm_exact": b.to_string(),
            })),
            Some(Format::Csv) => format!(
                "model,beta1,beta2,bound_norm\n{model},{},{},{}\n",
                rational_g12(b1.0),
                rational_g12(b2.0),
                rational_g12(b)
            ),
            None => format!("{model} normalized bound at beta1 = {b1}, beta2 = {b2}: {}\n", exact(b)),
        }
    };
    write_out(common.out.as_deref(), &text)
}

fn ld_bound_text(format: Option<Format>, model: Model, p: LdParams) -> String {
    let mut terms: Vec<(&str, Rational64)> = Vec::new();
    let mut case = None;
    match model {
        Model::WiretapHelper => {
            let b = wth_bound(&p);
            terms.extend([("r_ub1", b.r_ub1), ("r_ub2", b.r_ub2), ("r_ub3", b.r_ub3), ("bound", b.min_bound)]);
        }
        Model::MacWiretap => {
            let b = mac_bound(&p);
            terms.push(("bound", b.bound));
            case = Some(match b.case {
                MacBoundCase::WeakerAtLeastEve => "weaker-at-least-eve",
                MacBoundCase::EveAboveWeaker => "eve-above-weaker",
            });
        }
    }
    match format {
        Some(Format::Json) => {
            let mut v = json!({ "model": model.to_string(), "n1": p.n1, "n2": p.n2, "ne": p.ne });
            for (k, x) in &terms {
                v[*k] = json!(f(*x));
                v[format!("{k}_exact")] = json!(x.to_string());
            }
            if let Some(c) = case {
                v["case"] = json!(c);
            }
            json_text(&v)
        }
        Some(Format::Csv) => {
            let names: Vec<&str> = terms.iter().map(|t| t.0).collect();
            let values: Vec<String> = terms.iter().map(|t| rational_g12(t.1)).collect();
            format!("model,n1,n2,ne,{}\n{model},{},{},{},{}\n", names.join(","), p.n1, p.n2, p.ne, values.join(","))
        }
        None => {
            let mut s = format!("{model} {p}\n");
            for (k, x) in &terms {
                let _ = writeln!(s, "  {k:<7}{}", exact(*x));
            }
            if let Some(c) = case {
                let _ = writeln!(s, "  case   {c}");
            }
            s.push_str("  Gaussian channels: the same value plus an unquantified constant\n");
            s
        }
    }
}

/// `from, from + step, ...` up to and including `to`.
fn grid(from: Rational64, to: Rational64, step: Rational64) -> Result<Vec<Rational64>, CliError> {
    if step <= Rational64::zero() {
        return Err(CliError::Usage("--step must be positive".into()));
    }
    if from < Rational64::zero() || to < from {
        return Err(CliError::Usage("need 0 <= --beta1-from <= --beta1-to".into()));
    }
    let count = ((to - from) / step).floor().to_integer() + 1;
    if count > MAX_ROWS {
        return Err(CliError::Usage(format!("grid has {count} points, limit is {MAX_ROWS}")));
    }
    Ok((0..count).map(|i| from + step * i).collect())
}

pub(crate) fn sweep(common: &Common, cfg: &Config, a: SweepArgs) -> Result<(), CliError> {
    let model: Model = cfg.require(a.model, "model")?;
    let beta2 = nonnegative(cfg.require(a.beta2, "beta2")?, "beta2")?;
    let from = cfg.require(a.beta1_from, "beta1-from")?.0;
    let to = cfg.require(a.beta1_to, "beta1-to")?.0;
    let step = cfg.require(a.step, "step")?.0;
    let points = normalized_curve(model, &grid(from, to, step)?, beta2);
    for p in points.iter().filter(|p| p.is_singular()) {
        eprintln!("warning: beta1 = {} is a singular point, its rate cells are left empty", p.beta1);
    }
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for p in &points {
                let cell = |x: Option<Rational64>| x.map(rational_g12).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{model},{}",
                    rational_g12(p.beta1),
                    cell(p.achievable),
                    cell(p.bound),
                    rational_g12(beta2)
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    let mut row = json!({
                        "beta1": f(p.beta1),
                        "beta1_exact": p.beta1.to_string(),
                        "model": model.to_string(),
                        "beta2": f(beta2),
                        "singular": p.is_singular(),
                    });
                    if let (Some(a), Some(b)) = (p.achievable, p.bound) {
                        row["achievable_norm"] = json!(f(a));
                        row["achievable_norm_exact"] = json!(a.to_string());
                        row["bound_norm"] = json!(f(b));
                        row["bound_norm_exact"] = json!(b.to_string());
                    }
                    row
                })
                .collect();
            json_text(&json!({ "model": model.to_string(), "beta2": f(beta2), "rows": rows }))
        }
    };
    write_out(common.out.as_deref(), &text)
}

pub(crate) fn verify(common: &Common, cfg: &Config, a: VerifyArgs) -> Result<(), CliError> {
    let target: VerifyTarget = cfg
        .pick(a.target, "target")?
        .ok_or_else(|| CliError::Usage("missing verify target: scheme or lemmas".into()))?;
    let max_n: u32 = cfg.require(a.max_n, "max-n")?;
    let (text, failures) = match target {
        VerifyTarget::Scheme => {
            let models = match cfg.pick(a.model, "model")? {
                Some(m) => vec![m],
                None => Model::ALL.to_vec(),
            };
            let budget = cfg.pick(a.budget, "budget")?.unwrap_or(DEFAULT_BUDGET);
            let mutate = cfg.flag(a.mutate, "mutate")?;
            verify_schemes(common.format, &models, max_n, budget, mutate)
        }
        VerifyTarget::Lemmas => {
            let denom: u64 = cfg.pick(a.h_denom, "h-denom")?.unwrap_or(128);
            let s = lemma_sweep(max_n, denom)?;
            let text = match common.format {
                Some(Format::Json) => json_text(&json!({
                    "max_n": max_n, "h_denom": denom, "checks": s.checks,
                    "failures": s.failures.iter().map(|f| json!({
                        "lemma": f.lemma, "n": f.n, "m": f.m, "h": f.h.to_string(),
                    })).collect::<Vec<_>>(),
                })),
                Some(Format::Csv) => format!("max_n,h_denom,checks,failures\n{max_n},{denom},{},{}\n", s.checks, s.failures.len()),
                None => {
                    let mut t = format!(
                        "lemma oracles, n <= {max_n}, h = p/{denom}: {} checks, {} failures\n",
                        s.checks,
                        s.failures.len()
                    );
                    for f in &s.failures {
                        let _ = writeln!(t, "  lemma {} n={} m={:?} h={}", f.lemma, f.n, f.m, f.h);
                    }
                    t
                }
            };
            (text, s.failures.len())
        }
    };
    write_out(common.out.as_deref(), &text)?;
    if failures > 0 {
        return Err(CliError::Failed(format!("{failures} verification failures")));
    }
    Ok(())
}

fn verify_schemes(format: Option<Format>, models: &[Model], max_n: u32, budget: u32, mutate: bool) -> (String, usize) {
    let mut failures = 0;
    let mut human = String::new();
    let mut csv = String::from("model,max_n,triples_checked,skipped_singular,skipped_budget,failures,mutants,killed\n");
    let mut json_models = Vec::new();
    for &model in models {
        let s = grid_certify(model, max_n, budget);
        failures += s.failures.len();
        let m = mutate.then(|| mutation_suite(model, max_n, budget));
        let _ = writeln!(
            human,
            "{model}, max-n {max_n}: {} triples checked, {} singular skipped, {} over budget, {} failures",
            s.triples_checked,
            s.skipped_singular,
            s.skipped_budget.len(),
            s.failures.len()
        );
        for f in &s.failures {
            let _ = writeln!(human, "  {} {:?}", f.params, f.property);
        }
        for p in &s.skipped_budget {
            let _ = writeln!(human, "  skipped (budget {budget}) {p}");
        }
        let mut jm = json!({
            "model": model.to_string(),
            "max_n": max_n,
            "budget": budget,
            "triples_checked": s.triples_checked,
            "skipped_singular": s.skipped_singular,
            "skipped_budget": s.skipped_budget.iter().map(|p| [p.n1, p.n2, p.ne]).collect::<Vec<_>>(),
            "failures": s.failures.iter().map(|f| json!({
                "n1": f.params.n1, "n2": f.params.n2, "ne": f.params.ne,
                "property": format!("{:?}", f.property),
            })).collect::<Vec<_>>(),
        });
        let (mutants, killed) = match &m {
            Some(m) => {
                failures += m.survivors.len();
                let _ = writeln!(human, "  mutants {}, killed {}", m.mutants, m.killed);
                for sv in &m.survivors {
                    let _ = writeln!(human, "  survivor {} {} level {}", sv.params, sv.tx, sv.level);
                }
                jm["mutants"] = json!(m.mutants);
                jm["killed"] = json!(m.killed);
                jm["survivors"] = json!(m
                    .survivors
                    .iter()
                    .map(|sv| json!({ "n1": sv.params.n1, "n2": sv.params.n2, "ne": sv.params.ne,
                                      "tx": sv.tx.to_string(), "level": sv.level }))
                    .collect::<Vec<_>>());
                (m.mutants.to_string(), m.killed.to_string())
            }
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            csv,
            "{model},{max_n},{},{},{},{},{mutants},{killed}",
            s.triples_checked,
            s.skipped_singular,
            s.skipped_budget.len(),
            s.failures.len()
        );
        json_models.push(jm);
    }
    let text = match format {
        Some(Format::Json) => json_text(&json!({ "models": json_models })),
        Some(Format::Csv) => csv,
        None => human,
    };
    (text, failures)
}
