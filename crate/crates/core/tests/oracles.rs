use proptest::prelude::*;

use secrecy_lab::bounds::bound;
use secrecy_lab::gdof::{level_partition, normalized_achievable, normalized_bound, per_level_rate, SnrParams};
use secrecy_lab::ldm::{LdParams, Tx};
use secrecy_lab::schemes::{rate, LevelAllocation, LevelRole, Model};
use secrecy_lab::verify::{certify_scheme, JointCounts, DEFAULT_BUDGET};
use secrecy_lab::Rational64;

const ROLES: [LevelRole; 3] = [LevelRole::Message, LevelRole::Jam, LevelRole::Unused];

/// Every role assignment for both transmitters. The helper of WT-H never
/// carries a message.
fn all_allocations(model: Model, p: LdParams) -> Vec<LevelAllocation> {
    let w1 = p.input_width(Tx::One);
    let w2 = p.input_width(Tx::Two);
    let mut out = Vec::new();
    for code in 0..3u32.pow(w1 + w2) {
        let mut a = LevelAllocation::empty(model, p);
        let mut c = code;
        let mut ok = true;
        for (tx, w) in [(Tx::One, w1), (Tx::Two, w2)] {
            for k in 1..=w {
                let role = ROLES[(c % 3) as usize];
                c /= 3;
                ok &= !(model == Model::WiretapHelper && tx == Tx::Two && role == LevelRole::Message);
                a.set_role(tx, k, role).unwrap();
            }
        }
        if ok {
            out.push(a);
        }
    }
    out
}

#[test]
fn best_single_use_allocation_is_between_formula_and_bound() {
    for model in Model::ALL {
        for n1 in 0..=3 {
            for n2 in 0..=3 {
                for ne in 0..=3 {
                    let p = LdParams::new(n1, n2, ne);
                    if p.is_singular() {
                        continue;
                    }
                    let best = all_allocations(model, p)
                        .iter()
                        .filter_map(|a| certify_scheme(&p, a, DEFAULT_BUDGET).ok())
                        .filter(|r| r.decodable && r.leakage_zero)
                        .map(|r| r.measured_rate)
                        .max()
                        .unwrap();
                    let formula = rate(model, &p).unwrap().total;
                    assert!(formula <= best, "{model} {p}: formula {formula} > best {best}");
                    assert!(
                        Rational64::from_integer(best.into()) <= bound(model, &p),
                        "{model} {p}: best {best} above bound"
                    );
                }
            }
        }
    }
}

#[test]
fn xor_with_uniform_bit_hides_the_message() {
    // XOR of a message bit with a uniform jam bit, counted by hand
    let mut t = JointCounts::new();
    for m in 0..2u64 {
        for j in 0..2u64 {
            t.add(m, m ^ j, 1);
        }
    }
    assert!(t.independent().unwrap().is_zero());
    assert!(!t.label_determined().unwrap().is_zero());
}

#[test]
fn per_level_rate_reference_value() {
    // ½·log2((2^20 + 1) / (2^16 + 1)), evaluated independently
    let p = SnrParams::new(2f64.powi(20), 0.8, 1.0).unwrap();
    assert!((per_level_rate(&p, 1) - 1.999_989_681_124_6).abs() < 1e-9);
}

fn ratio(a: u32, b: u32) -> Rational64 {
    Rational64::new(a.into(), b.into())
}

proptest! {
    #[test]
    fn bit_level_rate_is_scaled_normalized_rate(n1 in 1u32..40, n2 in 0u32..40, ne in 0u32..40) {
        let p = LdParams::new(n1, n2, ne);
        prop_assume!(!p.is_singular());
        for model in Model::ALL {
            let ld = Rational64::from_integer(rate(model, &p).unwrap().total.into());
            let norm = normalized_achievable(model, ratio(n2, n1), ratio(ne, n1)).unwrap();
            prop_assert_eq!(ld, norm * Rational64::from_integer(n1.into()));
            let b = normalized_bound(model, ratio(n2, n1), ratio(ne, n1));
            prop_assert_eq!(bound(model, &p), b * Rational64::from_integer(n1.into()));
        }
    }

    #[test]
    fn rates_are_homogeneous(n1 in 0u32..30, n2 in 0u32..30, ne in 0u32..30, s in 1u32..6) {
        let p = LdParams::new(n1, n2, ne);
        prop_assume!(!p.is_singular());
        let ps = LdParams::new(s * n1, s * n2, s * ne);
        for model in Model::ALL {
            prop_assert_eq!(rate(model, &ps).unwrap().total, s * rate(model, &p).unwrap().total);
        }
    }

    #[test]
    fn level_powers_telescope(db in 10.0f64..120.0, b in 0.05f64..0.95, count in 1u32..30) {
        let p = SnrParams::from_db(db, b, 1.0).unwrap();
        let lp = level_partition(&p, count).unwrap();
        let sum = lp.total();
        prop_assert!(sum <= p.snr1() * (1.0 + 1e-9));
        prop_assert!(((sum + lp.below) - p.snr1()).abs() <= 1e-9 * p.snr1());
    }

    #[test]
    fn normalized_value_ignores_snr(b1 in 0u32..200, b2 in 0u32..200, db1 in 10.0f64..90.0, db2 in 10.0f64..90.0) {
        prop_assume!(b1 != 100);
        let (r1, r2) = (ratio(b1, 100), ratio(b2, 100));
        let first = SnrParams::with_exponents(10f64.powf(db1 / 10.0), r1, r2).unwrap();
        let second = SnrParams::with_exponents(10f64.powf(db2 / 10.0), r1, r2).unwrap();
        for model in Model::ALL {
            let a = normalized_achievable(model, first.beta1(), first.beta2()).unwrap();
            prop_assert_eq!(a, normalized_achievable(model, second.beta1(), second.beta2()).unwrap());
            prop_assert!(a <= normalized_bound(model, r1, r2));
        }
    }
}
