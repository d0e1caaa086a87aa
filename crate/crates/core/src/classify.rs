//! Closed-form classification of the linear sets L_{U(b)}.
//!
//! Each b ∈ GF(q⁴) falls into exactly one of three cases decided by norms:
//! N_{q⁴/q}(b) ≠ 1 gives a scattered set, N_{q⁴/q²}(b) = 1 gives a unique
//! weight-two point ⟨(1,0)⟩, and the remaining b give q+1 weight-two
//! points. Orbit equivalence under PGL(2,q⁴) and PΓL(2,q⁴) depends only on
//! the invariant n = b^{q²+1} ∈ GF(q²): the PGL class of n is the pair
//! {n, n^{−q}} and the PΓL class is the orbit {n^{±p^s}}.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exec;
use crate::field::{Felt, FieldSpec};
use crate::linear_set::{PointPg1, WeightSpectrum};
use crate::qpoly::QPoly;
use crate::{Error, Result};

/// The three mutually exclusive shapes of L_{U(b)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    /// N_{q⁴/q}(b) ≠ 1: scattered, size q³+q²+q+1.
    Scattered,
    /// N_{q⁴/q²}(b) = 1: one weight-two point, size q³+q²+1.
    OneDoublePoint,
    /// N_{q⁴/q}(b) = 1, N_{q⁴/q²}(b) ≠ 1: q+1 weight-two points, size q³+1.
    QPlusOneDoublePoints,
}

impl CaseLabel {
    pub fn index(self) -> u8 {
        match self {
            CaseLabel::Scattered => 1,
            CaseLabel::OneDoublePoint => 2,
            CaseLabel::QPlusOneDoublePoints => 3,
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Decides the case of b from the two norms.
pub fn classify_case(field: &FieldSpec, b: Felt) -> CaseLabel {
    let one = field.one();
    if field.norm(b, 1) != one {
        CaseLabel::Scattered
    } else if field.norm(b, 2) == one {
        CaseLabel::OneDoublePoint
    } else {
        CaseLabel::QPlusOneDoublePoints
    }
}

/// Weight spectrum each case forces: the two counting identities
/// w₁ + w₂ = |L| and w₁(q−1) + w₂(q²−1) = q⁴−1 pin (w₁, w₂) once the
/// number of weight-two points is known.
pub fn predicted_spectrum(field: &FieldSpec, label: CaseLabel) -> WeightSpectrum {
    let q = field.q();
    match label {
        CaseLabel::Scattered => WeightSpectrum::new(vec![(1, q * q * q + q * q + q + 1)]),
        CaseLabel::OneDoublePoint => WeightSpectrum::new(vec![(1, q * q * q + q * q), (2, 1)]),
        CaseLabel::QPlusOneDoublePoints => {
            WeightSpectrum::new(vec![(1, q * q * q - q), (2, q + 1)])
        }
    }
}

/// The orbit invariant n = b^{q²+1} = N_{q⁴/q²}(b).
pub fn norm_invariant(field: &FieldSpec, b: Felt) -> Felt {
    field.norm(b, 2)
}

/// PGL(2,q⁴)-equivalence of L_{U(b)} and L_{U(c)}:
/// c^{q²+1} = b^{q²+1} or c^{q²+1} = b^{−q(q²+1)}. b = 0 is its own class.
pub fn pgl_equivalent(field: &FieldSpec, b: Felt, c: Felt) -> bool {
    if b.is_zero() || c.is_zero() {
        return b == c;
    }
    let nb = norm_invariant(field, b);
    let nc = norm_invariant(field, c);
    nc == nb || nc == pgl_partner(field, nb)
}

/// n ↦ n^{−q}, the partner invariant inside one PGL class.
fn pgl_partner(field: &FieldSpec, n: Felt) -> Felt {
    field.pow(n, -(field.q() as i64)).expect("n nonzero")
}

/// PΓL(2,q⁴)-equivalence: c^{q²+1} = b^{±p^s(q²+1)} for some s in [0, 4e).
pub fn pgammal_equivalent(field: &FieldSpec, b: Felt, c: Felt) -> bool {
    if b.is_zero() || c.is_zero() {
        return b == c;
    }
    let nb = norm_invariant(field, b);
    let nc = norm_invariant(field, c);
    (0..4 * field.e()).any(|s| {
        let n = field.frobenius_p(nb, s);
        nc == n || nc == field.inv(n).expect("n nonzero")
    })
}

/// Which group the census partitions by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupFlavor {
    #[serde(rename = "PGL")]
    Pgl,
    #[serde(rename = "PGammaL")]
    PGammaL,
}

impl std::fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupFlavor::Pgl => write!(f, "PGL"),
            GroupFlavor::PGammaL => write!(f, "PGammaL"),
        }
    }
}

/// One equivalence class of the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub flavor: GroupFlavor,
    pub case: CaseLabel,
    /// Invariant n = rep^{q²+1} of the smallest-code member.
    pub norm_invariant: Felt,
    /// Smallest element code in the class.
    pub rep: Felt,
    /// Number of b ∈ GF(q⁴) in the class.
    pub size: u64,
}

/// Partition of all of GF(q⁴) into equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    pub flavor: GroupFlavor,
    /// Sorted by (case, representative code).
    pub classes: Vec<EquivClass>,
}

impl Census {
    pub fn class_count(&self, case: CaseLabel) -> u64 {
        self.classes.iter().filter(|c| c.case == case).count() as u64
    }

    pub fn class_of(&self, field: &FieldSpec, b: Felt) -> &EquivClass {
        let key = class_key(field, self.flavor, b);
        self.classes
            .iter()
            .find(|c| class_key(field, self.flavor, c.rep) == key)
            .expect("census covers GF(q^4)")
    }

    pub fn report(&self) -> CensusReport {
        CensusReport {
            q: self.q,
            group: self.flavor,
            classes: self
                .classes
                .iter()
                .map(|c| CensusClassReport {
                    case: c.case.index(),
                    norm_invariant: c.norm_invariant.code(),
                    rep: c.rep.code(),
                    size: c.size,
                })
                .collect(),
        }
    }
}

/// JSON shape: {"q":…, "group":"PGL"|"PGammaL", "classes":[{"case":…, …}]}.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub group: GroupFlavor,
    pub classes: Vec<CensusClassReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusClassReport {
    pub case: u8,
    pub norm_invariant: u64,
    pub rep: u64,
    pub size: u64,
}

/// Canonical class key of b: the smallest invariant code in the orbit of
/// n = b^{q²+1} under the group's action on invariants; b = 0 sits alone
/// under the sentinel key q⁴.
fn class_key(field: &FieldSpec, flavor: GroupFlavor, b: Felt) -> u64 {
    if b.is_zero() {
        return field.q4();
    }
    let n = norm_invariant(field, b);
    match flavor {
        GroupFlavor::Pgl => n.code().min(pgl_partner(field, n).code()),
        GroupFlavor::PGammaL => (0..4 * field.e())
            .flat_map(|s| {
                let m = field.frobenius_p(n, s);
                [m.code(), field.inv(m).expect("nonzero").code()]
            })
            .min()
            .expect("nonempty orbit"),
    }
}

/// Partitions all b ∈ GF(q⁴) by the equivalence predicate, reporting one
/// class per orbit with the smallest member as representative.
pub fn census(field: &FieldSpec, flavor: GroupFlavor) -> Census {
    let rows = exec::map_range(field.q4(), |code| {
        let b = Felt::new(code);
        (class_key(field, flavor, b), classify_case(field, b), code)
    });
    merge_census(field, flavor, rows)
}

/// Sequential twin of [`census`]; bit-identical output.
pub fn census_seq(field: &FieldSpec, flavor: GroupFlavor) -> Census {
    let rows = exec::map_range_seq(field.q4(), |code| {
        let b = Felt::new(code);
        (class_key(field, flavor, b), classify_case(field, b), code)
    });
    merge_census(field, flavor, rows)
}

fn merge_census(
    field: &FieldSpec,
    flavor: GroupFlavor,
    rows: Vec<(u64, CaseLabel, u64)>,
) -> Census {
    let mut by_key: BTreeMap<u64, (CaseLabel, u64, u64)> = BTreeMap::new();
    for (key, case, code) in rows {
        let entry = by_key.entry(key).or_insert((case, code, 0));
        assert_eq!(entry.0, case, "case label must be constant on classes");
        entry.1 = entry.1.min(code);
        entry.2 += 1;
    }
    let mut classes: Vec<EquivClass> = by_key
        .into_values()
        .map(|(case, rep, size)| {
            let rep = Felt::new(rep);
            EquivClass {
                flavor,
                case,
                norm_invariant: norm_invariant(field, rep),
                rep,
                size,
            }
        })
        .collect();
    classes.sort_by_key(|c| (c.case, c.rep));
    Census {
        q: field.q(),
        flavor,
        classes,
    }
}

/// The weight-two points of L_{U(b)}, found by solving
/// (λ−λ^q)^{(q−1)(q²+1)} = b^{q²+1} over λ ∈ GF(q⁴)∖GF(q),
/// recovering an admissible x from (λ−λ^q)^{q³−1} = b·x^{q−q³}, and
/// closing up under the GF(q²)*-orbit x ↦ μx.
pub fn weight_two_points(field: &FieldSpec, b: Felt) -> Vec<PointPg1> {
    if b.is_zero() {
        return Vec::new();
    }
    let q = field.q() as i64;
    let exponent = (q - 1) * (q * q + 1);
    let nb = norm_invariant(field, b);
    let poly = QPoly::lunardon_polverino(field, b);
    let mut out: Vec<PointPg1> = Vec::new();
    let subfield_units: Vec<Felt> = field
        .units()
        .filter(|&m| field.in_subfield(m, 2))
        .collect();
    for lambda in field.elements() {
        if field.in_subfield(lambda, 1) {
            continue;
        }
        let d = field.sub(lambda, field.frobenius(lambda, 1));
        if field.pow(d, exponent).expect("d nonzero") != nb {
            continue;
        }
        // x^{q−q³} = d^{q³−1} / b, i.e. x^{q³−q} = b / d^{q³−1}
        let rhs = field
            .div(b, field.pow(d, q * q * q - 1).expect("d nonzero"))
            .expect("d nonzero");
        let x = field
            .solve_power_root(rhs, q * q * q - q)
            .expect("rhs nonzero")
            .expect("solvable whenever the λ-condition holds");
        for &mu in &subfield_units {
            let mx = field.mul(mu, x);
            out.push(PointPg1::from_pair(field, mx, poly.eval(field, mx)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// For b ≠ 0 with N_{q⁴/q}(b) = 1: writes b = μ^{q−1} and returns a
/// nonzero z with z^{(q−1)(q²+1)} = 1 and Tr_{q⁴/q}(μz) = 0 — a common
/// point of the elliptic quadric Q and the hyperplane H_μ of PG(3, q).
pub fn quadric_hyperplane_witness(field: &FieldSpec, b: Felt) -> Result<Felt> {
    if b.is_zero() || field.norm(b, 1) != field.one() {
        return Err(Error::NormNotOne);
    }
    let q = field.q() as i64;
    let mu = field
        .solve_power_root(b, q - 1)?
        .expect("norm one makes b a (q−1)-th power");
    // Q is the subgroup generated by g^{q+1}, of order (q−1)(q²+1)
    let subgroup_order = (q - 1) * (q * q + 1);
    for k in 0..subgroup_order {
        let z = field.g_pow(k * (q + 1));
        if field.trace(field.mul(mu, z)).is_zero() {
            return Ok(z);
        }
    }
    unreachable!("an elliptic quadric of PG(3,q) meets every hyperplane")
}
