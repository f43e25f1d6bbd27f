//! Exhaustive certification of level allocations.
//!
//! Every assignment of message bits and jam bits is pushed through the
//! channel once. Unused levels are held at zero. Message and jam bits are
//! uniform, so each assignment has the same probability and the joint
//! distribution of `(W, Y)` is given by plain counts.

use rayon::prelude::*;

use super::entropy::{conditional_entropy, mutual_information, JointCounts, Measure};
use crate::bounds::bound;
use crate::error::{Error, Result};
use crate::ldm::{channel_outputs_raw, LdParams, Tx};
use crate::schemes::{build_allocation, rate, LevelAllocation, LevelRole, Model};

/// Default cap on message + jam bits for one enumeration.
pub const DEFAULT_BUDGET: u32 = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub model: Model,
    pub params: LdParams,
    pub decodable: bool,
    pub leakage_zero: bool,
    /// Message bits per channel use.
    pub measured_rate: u32,
    pub formula_rate: u32,
    pub matches_formula: bool,
    pub enumerated_states: u64,
    pub h_w_given_y1: Measure,
    pub i_w_y2: Measure,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.decodable && self.leakage_zero && self.matches_formula
    }
}

/// Bit masks of the levels of one transmitter carrying a role, in the
/// transmitter's packed input word.
fn masks(alloc: &LevelAllocation, tx: Tx, role: LevelRole) -> Vec<u64> {
    let w = alloc.params.input_width(tx);
    alloc.levels_with(tx, role).map(|k| 1u64 << (w - k)).collect()
}

/// Spreads the bits of `value` over `masks`, lowest bit to the first mask.
fn deposit(value: u64, masks: &[u64]) -> u64 {
    masks
        .iter()
        .enumerate()
        .filter(|(i, _)| value >> i & 1 == 1)
        .fold(0, |acc, (_, m)| acc | m)
}

/// Per-transmitter masks of a role, split at the transmitter boundary.
struct RoleBits {
    tx1: Vec<u64>,
    tx2: Vec<u64>,
}

impl RoleBits {
    fn new(alloc: &LevelAllocation, role: LevelRole) -> Self {
        RoleBits {
            tx1: masks(alloc, Tx::One, role),
            tx2: masks(alloc, Tx::Two, role),
        }
    }

    fn len(&self) -> u32 {
        (self.tx1.len() + self.tx2.len()) as u32
    }

    fn inputs(&self, value: u64) -> (u64, u64) {
        let split = self.tx1.len();
        (deposit(value, &self.tx1), deposit(value >> split, &self.tx2))
    }
}

/// Enumerates `alloc` and checks decodability at `Y1`, zero leakage at `Y2`
/// and the message count against the rate formula.
pub fn certify_scheme(params: &LdParams, alloc: &LevelAllocation, budget: u32) -> Result<VerificationReport> {
    if alloc.params != *params {
        return Err(Error::InvalidParameter(format!(
            "allocation is for {} but parameters are {params}",
            alloc.params
        )));
    }
    let formula_rate = rate(alloc.model, params)?.total;
    let msg = RoleBits::new(alloc, LevelRole::Message);
    let jam = RoleBits::new(alloc, LevelRole::Jam);
    let required = msg.len() + jam.len();
    if required > budget || required > 62 {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let jams = 1u64 << jam.len();
    let rows: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..1u64 << msg.len())
        .into_par_iter()
        .map(|w| {
            let (m1, m2) = msg.inputs(w);
            let (y1, y2): (Vec<u64>, Vec<u64>) = (0..jams)
                .map(|j| {
                    let (j1, j2) = jam.inputs(j);
                    channel_outputs_raw(params, m1 | j1, m2 | j2)
                })
                .unzip();
            (w, y1, y2)
        })
        .collect();

    let mut t1 = JointCounts::new();
    let mut t2 = JointCounts::new();
    for (w, y1, y2) in rows {
        t1.add_observations(w, y1);
        t2.add_observations(w, y2);
    }
    let h_w_given_y1 = conditional_entropy(&t1)?;
    let i_w_y2 = mutual_information(&t2)?;
    let measured_rate = msg.len();
    Ok(VerificationReport {
        model: alloc.model,
        params: *params,
        decodable: h_w_given_y1.exact.is_zero(),
        leakage_zero: i_w_y2.exact.is_zero(),
        measured_rate,
        formula_rate,
        matches_formula: measured_rate == formula_rate,
        enumerated_states: 1u64 << required,
        h_w_given_y1,
        i_w_y2,
    })
}

/// A property that failed on a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Decodability,
    Leakage,
    FormulaMismatch,
    BoundDominance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFailure {
    pub params: LdParams,
    pub property: Property,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSummary {
    pub model: Model,
    pub max_n: u32,
    pub triples_checked: u32,
    pub skipped_singular: u32,
    /// Triples whose enumeration would exceed the budget.
    pub skipped_budget: Vec<LdParams>,
    pub failures: Vec<GridFailure>,
}

impl GridSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn grid(max_n: u32) -> Vec<LdParams> {
    let mut out = Vec::new();
    for n1 in 0..=max_n {
        for n2 in 0..=max_n {
            for ne in 0..=max_n {
                out.push(LdParams::new(n1, n2, ne));
            }
        }
    }
    out
}

enum Outcome {
    Singular,
    OverBudget(LdParams),
    Checked(Vec<GridFailure>),
}

fn check_point(model: Model, p: LdParams, budget: u32) -> Outcome {
    if p.is_singular() {
        return Outcome::Singular;
    }
    let alloc = build_allocation(model, &p).expect("non-singular");
    let report = match certify_scheme(&p, &alloc, budget) {
        Ok(r) => r,
        Err(Error::BudgetExceeded { .. }) => return Outcome::OverBudget(p),
        Err(e) => panic!("unexpected error at {p}: {e}"),
    };
    let mut failures = Vec::new();
    let mut fail = |property| failures.push(GridFailure { params: p, property });
    if !report.decodable {
        fail(Property::Decodability);
    }
    if !report.leakage_zero {
        fail(Property::Leakage);
    }
    if !report.matches_formula {
        fail(Property::FormulaMismatch);
    }
    if num_rational::Rational64::from_integer(i64::from(report.formula_rate)) > bound(model, &p) {
        fail(Property::BoundDominance);
    }
    Outcome::Checked(failures)
}

/// Certifies the constructed allocation of `model` on every triple in
/// `[0, max_n]^3`. Singular triples and triples over budget are skipped.
pub fn grid_certify(model: Model, max_n: u32, budget: u32) -> GridSummary {
    let outcomes: Vec<Outcome> = grid(max_n)
        .into_par_iter()
        .map(|p| check_point(model, p, budget))
        .collect();
    let mut summary = GridSummary {
        model,
        max_n,
        triples_checked: 0,
        skipped_singular: 0,
        skipped_budget: Vec::new(),
        failures: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Singular => summary.skipped_singular += 1,
            Outcome::OverBudget(p) => summary.skipped_budget.push(p),
            Outcome::Checked(f) => {
                summary.triples_checked += 1;
                summary.failures.extend(f);
            }
        }
    }
    summary
}

/// One allocation with a single protecting jam level removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mutant {
    pub params: LdParams,
    pub tx: Tx,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationSummary {
    pub model: Model,
    pub mutants: u32,
    pub killed: u32,
    pub survivors: Vec<Mutant>,
}

impl MutationSummary {
    pub fn kill_rate(&self) -> f64 {
        if self.mutants == 0 {
            1.0
        } else {
            f64::from(self.killed) / f64::from(self.mutants)
        }
    }
}

/// Removes each protecting jam level of each allocation on `[0, max_n]^3`
/// in turn; a mutant is killed when certification reports leakage.
pub fn mutation_suite(model: Model, max_n: u32, budget: u32) -> MutationSummary {
    let results: Vec<(Mutant, bool)> = grid(max_n)
        .into_par_iter()
        .filter(|p| !p.is_singular())
        .flat_map_iter(|p| {
            let alloc = build_allocation(model, &p).expect("non-singular");
            alloc
                .protecting_jams()
                .into_iter()
                .filter_map(move |(tx, level)| {
                    let mutated = alloc.with_role(tx, level, LevelRole::Unused).ok()?;
                    let report = certify_scheme(&p, &mutated, budget).ok()?;
                    Some((Mutant { params: p, tx, level }, !report.leakage_zero))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut summary = MutationSummary {
        model,
        mutants: 0,
        killed: 0,
        survivors: Vec::new(),
    };
    for (m, killed) in results {
        summary.mutants += 1;
        if killed {
            summary.killed += 1;
        } else {
            summary.survivors.push(m);
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{build_mac_allocation, build_wth_allocation};

    #[test]
    fn wth_example() {
        let p = LdParams::new(4, 2, 4);
        let r = certify_scheme(&p, &build_wth_allocation(&p).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(r.decodable && r.leakage_zero && r.matches_formula);
        assert_eq!((r.measured_rate, r.enumerated_states), (2, 16));
    }

    #[test]
    fn mac_example() {
        let p = LdParams::new(6, 3, 6);
        let r = certify_scheme(&p, &build_mac_allocation(&p).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        assert_eq!((r.measured_rate, r.enumerated_states), (3, 1 << 9));
    }

    #[test]
    fn removing_a_jam_leaks() {
        let p = LdParams::new(4, 2, 4);
        let a = build_wth_allocation(&p).unwrap();
        let (tx, k) = a.protecting_jams()[0];
        let r = certify_scheme(&p, &a.with_role(tx, k, LevelRole::Unused).unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(r.decodable && !r.leakage_zero);
        assert!(r.i_w_y2.bits > 0.0);
    }

    #[test]
    fn budget_is_refused_not_sampled() {
        let p = LdParams::new(6, 3, 6);
        let a = build_mac_allocation(&p).unwrap();
        assert_eq!(
            certify_scheme(&p, &a, 8),
            Err(Error::BudgetExceeded { required: 9, budget: 8 })
        );
    }

    #[test]
    fn one_level_crypto_lemma() {
        // one message bit covered by one jam bit at the eavesdropper
        let p = LdParams::new(1, 0, 1);
        let a = LevelAllocation::empty(Model::WiretapHelper, p)
            .with_role(Tx::One, 1, LevelRole::Message)
            .unwrap()
            .with_role(Tx::Two, 1, LevelRole::Jam)
            .unwrap();
        let r = certify_scheme(&p, &a, DEFAULT_BUDGET).unwrap();
        assert!(r.decodable && r.leakage_zero);
    }

    #[test]
    fn degenerate_grid() {
        let s = grid_certify(Model::WiretapHelper, 1, DEFAULT_BUDGET);
        assert!(s.passed());
        assert_eq!(s.skipped_singular, 4);
        assert_eq!(s.triples_checked, 4);
    }

    #[test]
    fn mismatched_params_rejected() {
        let a = build_wth_allocation(&LdParams::new(4, 2, 4)).unwrap();
        assert!(matches!(
            certify_scheme(&LdParams::new(4, 2, 3), &a, DEFAULT_BUDGET),
            Err(Error::InvalidParameter(_))
        ));
    }
}
