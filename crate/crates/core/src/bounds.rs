//! Closed-form evaluators for the displayed counts and inequalities, so the
//! verification harnesses can compare enumerated reality against formulas.
//!
//! Everything is exact integer arithmetic where a value is an integer;
//! asymptotic expressions drop their vanishing factors and say so in the
//! report.

use std::collections::BTreeMap;
use std::f64::consts::E;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Values above this many bits are reported as log2 instead of exact digits.
const EXACT_BIT_LIMIT: u64 = 1024;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut r = BigUint::from(1u32);
    for d in 1..=k.min(n - k) {
        r = r * BigUint::from(n - d + 1) / BigUint::from(d);
    }
    r
}

/// Exact binomial in u64; panics on overflow, which the desk-scale callers
/// never reach.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial fits u64 at desk scale")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigUint),
    Log2(f64),
}

impl BoundValue {
    pub fn from_biguint(v: BigUint) -> Self {
        if v.bits() > EXACT_BIT_LIMIT {
            // log2 via the top bits
            let bits = v.bits();
            let shift = bits.saturating_sub(53);
            let top: u64 = u64::try_from(v >> shift).expect("53 bits fit");
            BoundValue::Log2((top as f64).log2() + shift as f64)
        } else {
            BoundValue::Exact(v)
        }
    }
}

/// One evaluated formula, ready to serialize next to enumerated values.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub value: BoundValue,
    pub side: Side,
    /// Set when a (1 +/- o(1)) factor was dropped: the constant is uncertified.
    pub asymptotic: bool,
    pub compared_against: Option<BigUint>,
}

impl BoundReport {
    pub fn new(name: &str, side: Side, value: BoundValue) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: BTreeMap::new(),
            value,
            side,
            asymptotic: false,
            compared_against: None,
        }
    }

    pub fn with_input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("input serializes"),
        );
        self
    }

    pub fn asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }

    pub fn compared_against(mut self, observed: BigUint) -> Self {
        self.compared_against = Some(observed);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), serde_json::json!(self.name));
        obj.insert("inputs".into(), serde_json::json!(self.inputs));
        match &self.value {
            BoundValue::Exact(v) => {
                obj.insert("value".into(), serde_json::json!(v.to_string()));
            }
            BoundValue::Log2(x) => {
                obj.insert("log2_value".into(), serde_json::json!(x));
            }
        }
        obj.insert(
            "side".into(),
            serde_json::to_value(self.side).expect("side serializes"),
        );
        if self.asymptotic {
            obj.insert("asymptotic".into(), serde_json::json!(true));
        }
        if let Some(observed) = &self.compared_against {
            obj.insert(
                "compared_against".into(),
                serde_json::json!(observed.to_string()),
            );
        }
        serde_json::Value::Object(obj)
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// Smallest degree D with binom(D, l-2) >= t, next to the strict closed-form
/// lower bound e^{-1} (l-2) t^{1/(l-2)} it dominates.
pub fn min_degree_lower_bound(l: u64, t: u64) -> Result<(u64, f64)> {
    require(l >= 3, "min_degree_lower_bound needs l >= 3")?;
    require(t >= 1, "min_degree_lower_bound needs t >= 1")?;
    let k = l - 2;
    let mut d = k;
    while binomial(d, k) < BigUint::from(t) {
        d += 1;
    }
    let closed = (k as f64) / E * (t as f64).powf(1.0 / k as f64);
    Ok((d, closed))
}

/// Average degree that forces a K_d subdivision (constant uncertified).
pub fn ko_threshold(d: u64) -> f64 {
    10.0 / 23.0 * (d as f64) * (d as f64)
}

/// Largest d whose threshold is within the given average degree.
pub fn subdivision_order(avg_degree: f64) -> u64 {
    let mut d = 0;
    while ko_threshold(d + 1) <= avg_degree {
        d += 1;
    }
    d
}

/// log2 of the guaranteed subdivision count for complete patterns:
/// t^(1 / (2(l-2))).
pub fn bound_i_log2(l: u64, t: u64) -> Result<f64> {
    require(
        l >= 4,
        "bound_i_log2 needs l >= 4; l = 3 is the cycle-count path",
    )?;
    require(t >= 1, "bound_i_log2 needs t >= 1")?;
    Ok((t as f64).powf(1.0 / (2.0 * (l - 2) as f64)))
}

/// Subdivision order reachable from the degree bound:
/// sqrt(23(l-2)/(10e)) * t^(1/(2(l-2))), vanishing factor dropped.
pub fn eq2_d(l: u64, t: u64) -> Result<f64> {
    require(l >= 4, "eq2_d needs l >= 4")?;
    require(t >= 1, "eq2_d needs t >= 1")?;
    Ok((23.0 * (l - 2) as f64 / (10.0 * E)).sqrt() * (t as f64).powf(1.0 / (2.0 * (l - 2) as f64)))
}

/// Upper bound for non-complete patterns: 2^l (t+2)^(e_f + 2l).
pub fn bound_ii(l: u64, e_f: u64, t: u64) -> BigUint {
    BigUint::from(2u32).pow(l as u32) * BigUint::from(t + 2).pow((e_f + 2 * l) as u32)
}

/// Split-host counting bound: 2^l (b+1)^(e_f + 2l) where b is the
/// independent-side size.
pub fn lemma5_bound(l: u64, e_f: u64, b: u64) -> BigUint {
    BigUint::from(2u32).pow(l as u32) * BigUint::from(b + 1).pow((e_f + 2 * l) as u32)
}

/// Exponent (1 - 2 eps)(binom(l-2, 2) + 1) of the near-complete lower bound.
pub fn bound_iii_exponent(l: u64, eps: f64) -> Result<f64> {
    require(l >= 4, "bound_iii_exponent needs l >= 4")?;
    require(
        eps > 0.0 && eps < 0.5,
        "bound_iii_exponent needs 0 < eps < 1/2",
    )?;
    Ok((1.0 - 2.0 * eps) * (binomial_u64(l - 2, 2) + 1) as f64)
}

/// The two published forms of that exponent, which must agree:
/// e(K_l minus an edge) - 2l + 5 and binom(l-2, 2) + 1.
pub fn kminus_exponent_identity(l: u64) -> Result<(i64, i64)> {
    require(l >= 4, "kminus_exponent_identity needs l >= 4")?;
    let e_kminus = (l * (l - 1) / 2 - 1) as i64;
    let lhs = e_kminus - 2 * l as i64 + 5;
    let rhs = (binomial_u64(l - 2, 2) + 1) as i64;
    Ok((lhs, rhs))
}

/// Distinguishable subdivisions of K_l in the complete host K_r:
/// sum of binom(r, i) for i in l..=r.
pub fn complete_count(l: u64, r: u64) -> Result<BigUint> {
    require(l >= 3, "complete_count needs l >= 3")?;
    require(l <= r, "complete_count needs l <= r")?;
    Ok((l..=r).map(|i| binomial(r, i)).sum())
}

/// Distinguishable cycles in K_{d+1}: 2^(d+1) - binom(d+1, 2) - d - 2.
pub fn komlos_cycle_count(d: u64) -> Result<BigUint> {
    require(d >= 2, "komlos_cycle_count needs d >= 2")?;
    let total = BigUint::from(2u32).pow((d + 1) as u32);
    let subtract = binomial(d + 1, 2) + BigUint::from(d) + BigUint::from(2u32);
    Ok(total - subtract)
}

/// Guaranteed family size from a K_d subdivision: 2^d - sum of binom(d, i)
/// for i < l.
pub fn theorem_i_count_lower(d: u64, l: u64) -> Result<BigUint> {
    require(l <= d, "theorem_i_count_lower needs l <= d")?;
    let total = BigUint::from(2u32).pow(d as u32);
    let small: BigUint = (0..l).map(|i| binomial(d, i)).sum();
    Ok(total - small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_u64(5, 2), 10);
        assert_eq!(binomial_u64(4, 2), 6);
        assert_eq!(binomial_u64(3, 5), 0);
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree_lower_bound(4, 10).unwrap().0, 5);
        assert_eq!(min_degree_lower_bound(3, 7).unwrap().0, 7);
        let (exact, closed) = min_degree_lower_bound(4, 10).unwrap();
        assert!((closed - 2.0 / E * 10f64.sqrt()).abs() < 1e-12);
        assert!((exact as f64) > closed);
    }

    #[test]
    fn ko_threshold_and_order() {
        assert_eq!(ko_threshold(23), 230.0);
        assert_eq!(subdivision_order(10.0), 4);
        assert_eq!(subdivision_order(0.0), 0);
    }

    #[test]
    fn part_i_evaluators() {
        assert_eq!(bound_i_log2(4, 16).unwrap(), 2.0);
        assert_eq!(bound_i_log2(5, 729).unwrap(), 3.0);
        let d = eq2_d(4, 1).unwrap();
        assert!((d - (46.0 / (10.0 * E)).sqrt()).abs() < 1e-12);
        assert!((d - 1.301).abs() < 1e-3);
    }

    #[test]
    fn part_ii_evaluators() {
        let expected = BigUint::from(2u32).pow(4) * BigUint::from(5u32).pow(13);
        assert_eq!(lemma5_bound(4, 5, 4), expected);
        assert_eq!(bound_ii(4, 5, 3), expected);
        assert_eq!(
            bound_ii(3, 3, 1),
            BigUint::from(2u32).pow(3) * BigUint::from(3u32).pow(9)
        );
    }

    #[test]
    fn part_iii_evaluators() {
        assert_eq!(kminus_exponent_identity(4).unwrap(), (2, 2));
        assert_eq!(kminus_exponent_identity(6).unwrap(), (7, 7));
        assert!((bound_iii_exponent(4, 0.1).unwrap() - 1.6).abs() < 1e-12);
        for l in 4..=50 {
            let (lhs, rhs) = kminus_exponent_identity(l).unwrap();
            assert_eq!(lhs, rhs, "l={l}");
        }
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(complete_count(3, 5).unwrap(), BigUint::from(16u32));
        assert_eq!(komlos_cycle_count(4).unwrap(), BigUint::from(16u32));
        assert_eq!(complete_count(4, 4).unwrap(), BigUint::from(1u32));
        assert_eq!(theorem_i_count_lower(4, 3).unwrap(), BigUint::from(5u32));
        assert_eq!(theorem_i_count_lower(5, 4).unwrap(), BigUint::from(6u32));
        assert_eq!(theorem_i_count_lower(3, 3).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn cycle_count_agreement() {
        // the two published counts agree on complete hosts
        for d in 2..=30u64 {
            assert_eq!(
                complete_count(3, d + 1).unwrap(),
                komlos_cycle_count(d).unwrap(),
                "d={d}"
            );
        }
    }

    #[test]
    fn huge_values_fall_back_to_log2() {
        let report = BoundReport::new(
            "bound_ii",
            Side::Upper,
            BoundValue::from_biguint(bound_ii(40, 700, 1_000_000)),
        );
        match report.value {
            BoundValue::Log2(x) => assert!(x > 1024.0),
            BoundValue::Exact(_) => panic!("expected log2 fallback"),
        }
        let json = report.to_json();
        assert!(json.get("log2_value").is_some());
        assert!(json.get("value").is_none());
    }

    #[test]
    fn report_json_shape() {
        let report = BoundReport::new(
            "complete_count",
            Side::Lower,
            BoundValue::from_biguint(complete_count(3, 5).unwrap()),
        )
        .with_input("l", 3)
        .with_input("r", 5)
        .compared_against(BigUint::from(16u32));
        let json = report.to_json();
        assert_eq!(json["value"], serde_json::json!("16"));
        assert_eq!(json["side"], serde_json::json!("lower"));
        assert_eq!(json["compared_against"], serde_json::json!("16"));
        assert_eq!(json["inputs"]["l"], serde_json::json!(3));
    }
}
