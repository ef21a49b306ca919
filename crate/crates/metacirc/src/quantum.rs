//! Qubit-code parameter bookkeeping. A self-dual additive code of length l
//! and distance d stands for an [[l, 0, d]] stabilizer state; secondary
//! constructions turn one parameter triple into others. No stabilizer
//! groups are materialized, these are records and rewrite rules.

use crate::code::{is_symplectic_self_dual, AdditiveCode};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumParams {
    length: u32,
    k: u32,
    d: u32,
    /// Seed description followed by one entry per applied rule.
    provenance: Vec<String>,
    /// True when d comes from exhaustive enumeration of the seed code;
    /// false for asserted distances and for anything propagated.
    d_verified: bool,
}

impl QuantumParams {
    pub fn new(
        length: u32,
        k: u32,
        d: u32,
        provenance: Vec<String>,
        d_verified: bool,
    ) -> Result<QuantumParams, Error> {
        if length == 0 || d == 0 || k > length {
            return Err(Error::RuleViolation(format!(
                "parameters [[{length}, {k}, {d}]] out of range"
            )));
        }
        Ok(QuantumParams { length, k, d, provenance, d_verified })
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.length, self.k, self.d)
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn d_verified(&self) -> bool {
        self.d_verified
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "l": self.length,
            "k": self.k,
            "d": self.d,
            "provenance": self.provenance,
        })
        .to_string()
    }
}

impl std::fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}, {}]]", self.length, self.k, self.d)
    }
}

/// [[l, 0, d]] from a self-dual code. `d_verified` records whether d was
/// established by exhaustive sweep or merely asserted.
pub fn from_self_dual_code(
    c: &AdditiveCode,
    d: u32,
    d_verified: bool,
) -> Result<QuantumParams, Error> {
    if !is_symplectic_self_dual(c) {
        return Err(Error::NotSelfDual);
    }
    let note = if d_verified { "verified" } else { "asserted" };
    QuantumParams::new(
        c.len() as u32,
        0,
        d,
        vec![format!("graph-code seed (length {}, d {note})", c.len())],
        d_verified,
    )
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    /// Pass to a subcode with k' logical qubits, 1 <= k' <= k.
    Subcode(u32),
    /// Extend to length lambda >= l; needs k >= 1.
    Lengthen(u32),
    /// Drop one coordinate: [[l-1, k, d-1]]; needs d > 1.
    Puncture,
    /// Shorten at `count` coordinates: [[l-count, k+count, d-count]];
    /// needs d > count. The parameter arithmetic matches known derived
    /// code families but carries no general proof here, so the provenance
    /// trail flags every application as empirical.
    Shorten(u32),
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::Subcode(kp) => write!(f, "subcode({kp})"),
            Rule::Lengthen(l) => write!(f, "lengthen({l})"),
            Rule::Puncture => write!(f, "puncture"),
            Rule::Shorten(c) => write!(f, "shorten({c}) [empirical rule]"),
        }
    }
}

pub fn propagate(p: &QuantumParams, rule: Rule) -> Result<QuantumParams, Error> {
    let (length, k, d) = match rule {
        Rule::Subcode(kp) => {
            if k_guard(p.k) {
                return Err(Error::RuleViolation("subcode needs k >= 1".into()));
            }
            if kp == 0 || kp > p.k {
                return Err(Error::RuleViolation(format!(
                    "subcode(k') needs 1 <= k' <= {}, got {kp}",
                    p.k
                )));
            }
            (p.length, kp, p.d)
        }
        Rule::Lengthen(lambda) => {
            if k_guard(p.k) {
                return Err(Error::RuleViolation("lengthen needs k >= 1".into()));
            }
            if lambda < p.length {
                return Err(Error::RuleViolation(format!(
                    "lengthen(lambda) needs lambda >= {}, got {lambda}",
                    p.length
                )));
            }
            (lambda, p.k, p.d)
        }
        Rule::Puncture => {
            if p.d <= 1 {
                return Err(Error::RuleViolation("puncture needs d > 1".into()));
            }
            (p.length - 1, p.k, p.d - 1)
        }
        Rule::Shorten(count) => {
            if count == 0 {
                return Err(Error::RuleViolation("shorten needs count >= 1".into()));
            }
            if p.d <= count {
                return Err(Error::RuleViolation(format!(
                    "shorten({count}) needs d > {count}, d is {}",
                    p.d
                )));
            }
            (p.length - count, p.k + count, p.d - count)
        }
    };
    let mut provenance = p.provenance.clone();
    provenance.push(rule.to_string());
    QuantumParams::new(length, k, d, provenance, false)
}

fn k_guard(k: u32) -> bool {
    k == 0
}

/// Replays the nine secondary constructions applied to the [[78, 0, 20]]
/// seed, in publication order. Parameter bookkeeping only; the seed
/// distance is asserted, not swept.
pub fn derive_q78_family() -> Vec<QuantumParams> {
    let base = QuantumParams::new(
        78,
        0,
        20,
        vec!["graph-code seed (length 78, d asserted)".to_string()],
        false,
    )
    .expect("static seed parameters are valid");
    let step = |p: &QuantumParams, r: Rule| propagate(p, r).expect("chain rules all applicable");
    let r1 = step(&base, Rule::Puncture);
    let r2 = step(&base, Rule::Shorten(1));
    let r3 = step(&r2, Rule::Lengthen(78));
    let r4 = step(&base, Rule::Shorten(2));
    let r5 = step(&r4, Rule::Subcode(1));
    let r6 = step(&r4, Rule::Lengthen(77));
    let r7 = step(&base, Rule::Shorten(3));
    let r8 = step(&r7, Rule::Lengthen(76));
    let r9 = step(&r7, Rule::Subcode(2));
    vec![r1, r2, r3, r4, r5, r6, r7, r8, r9]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::code_from_graph;
    use crate::graph::{build_graph, MetacirculantSpec};

    fn base() -> QuantumParams {
        QuantumParams::new(78, 0, 20, vec!["seed".into()], false).unwrap()
    }

    #[test]
    fn dodecacode_maps_to_twelve_zero_six() {
        let spec = MetacirculantSpec::new(2, 6, 5, &[vec![3], vec![0, 3, 4, 5]]).unwrap();
        let c = code_from_graph(&build_graph(&spec).unwrap()).unwrap();
        let p = from_self_dual_code(&c, 6, true).unwrap();
        assert_eq!(p.triple(), (12, 0, 6));
        assert!(p.d_verified());
        assert!(p.provenance()[0].contains("verified"));
    }

    #[test]
    fn non_self_dual_is_rejected() {
        let spec = MetacirculantSpec::new(2, 5, 2, &[vec![1, 4], vec![0]]).unwrap();
        let c = code_from_graph(&build_graph(&spec).unwrap()).unwrap();
        let mut gens = c.generators().to_vec();
        let mut a0 = gens[0].a_row().clone();
        a0.set(1, !a0.get(1));
        gens[0] = crate::gf4::F4Vector::from_rows(a0, gens[0].b_row().clone());
        let bad = AdditiveCode::new(10, gens).unwrap();
        assert!(matches!(from_self_dual_code(&bad, 4, false), Err(Error::NotSelfDual)));
    }

    #[test]
    fn rule_preconditions() {
        let p = base();
        assert!(propagate(&p, Rule::Subcode(1)).is_err()); // k = 0
        assert!(propagate(&p, Rule::Lengthen(79)).is_err()); // k = 0
        assert!(propagate(&p, Rule::Shorten(20)).is_err()); // d not > 20
        assert!(propagate(&p, Rule::Shorten(0)).is_err());
        let one = QuantumParams::new(10, 1, 1, vec![], false).unwrap();
        assert!(propagate(&one, Rule::Puncture).is_err()); // d = 1
        assert!(propagate(&one, Rule::Lengthen(9)).is_err()); // shrinking
        assert!(propagate(&one, Rule::Subcode(2)).is_err()); // k' > k
        assert!(propagate(&one, Rule::Subcode(0)).is_err());
    }

    #[test]
    fn rules_transform_parameters() {
        let p = base();
        assert_eq!(propagate(&p, Rule::Puncture).unwrap().triple(), (77, 0, 19));
        let s = propagate(&p, Rule::Shorten(1)).unwrap();
        assert_eq!(s.triple(), (77, 1, 19));
        assert!(!s.d_verified());
        assert!(s.provenance().last().unwrap().contains("empirical"));
        assert_eq!(propagate(&s, Rule::Lengthen(80)).unwrap().triple(), (80, 1, 19));
        assert_eq!(propagate(&s, Rule::Subcode(1)).unwrap().triple(), (77, 1, 19));
    }

    #[test]
    fn multi_shorten_equals_repeated_single() {
        let p = base();
        let two = propagate(&p, Rule::Shorten(2)).unwrap();
        let chained =
            propagate(&propagate(&p, Rule::Shorten(1)).unwrap(), Rule::Shorten(1)).unwrap();
        assert_eq!(two.triple(), chained.triple());
    }

    #[test]
    fn q78_family_matches_published_parameters() {
        let rows = derive_q78_family();
        let triples: Vec<(u32, u32, u32)> = rows.iter().map(|p| p.triple()).collect();
        assert_eq!(
            triples,
            vec![
                (77, 0, 19),
                (77, 1, 19),
                (78, 1, 19),
                (76, 2, 18),
                (76, 1, 18),
                (77, 2, 18),
                (75, 3, 17),
                (76, 3, 17),
                (75, 2, 17),
            ]
        );
        for p in &rows {
            assert!(!p.d_verified());
            assert!(p.provenance()[0].contains("length 78"));
        }
        // Row 4 came from a double shorten, row 9 from shorten then subcode.
        assert_eq!(rows[3].provenance().last().unwrap(), "shorten(2) [empirical rule]");
        assert_eq!(rows[8].provenance().last().unwrap(), "subcode(2)");
    }

    #[test]
    fn json_shape() {
        let p = base();
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["l"], 78);
        assert_eq!(v["k"], 0);
        assert_eq!(v["d"], 20);
        assert!(v["provenance"].is_array());
    }

    #[test]
    fn invariants_enforced_at_construction() {
        assert!(QuantumParams::new(0, 0, 1, vec![], false).is_err());
        assert!(QuantumParams::new(5, 6, 1, vec![], false).is_err());
        assert!(QuantumParams::new(5, 0, 0, vec![], false).is_err());
    }
}
