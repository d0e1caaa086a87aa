//! Points of PG(1, q⁴) and GF(q)-linear sets with their point weights.
//!
//! A linear set here is always presented by a q-polynomial f: the graph
//! U_f = {(x, f(x))} is a rank-4 GF(q)-subspace of GF(q⁴)² and
//! L_{U_f} = {⟨(x, f(x))⟩ : x ≠ 0}. The weight of a point P is
//! dim_{GF(q)}(U_f ∩ P), recovered from the multiplicity count
//! |{x ≠ 0 : (x, f(x)) ∈ P}| = q^w − 1.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::{Felt, FieldSpec};
use crate::qpoly::QPoly;

/// A point of PG(1, q⁴) in canonical form: (1 : y) is stored as the code of
/// y, and (0 : 1) as the sentinel code q⁴. The ordering of the codes is the
/// canonical ordering of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointPg1(u64);

impl PointPg1 {
    /// Canonical point spanned by (x, y) ≠ (0, 0): normalize by the inverse
    /// of the first nonzero coordinate.
    pub fn from_pair(field: &FieldSpec, x: Felt, y: Felt) -> Self {
        if x.is_zero() {
            assert!(!y.is_zero(), "(0, 0) spans no point");
            PointPg1(field.q4())
        } else {
            PointPg1(field.div(y, x).expect("x nonzero").code())
        }
    }

    pub fn from_code(field: &FieldSpec, code: u64) -> crate::Result<Self> {
        if code <= field.q4() {
            Ok(PointPg1(code))
        } else {
            Err(crate::Error::BadElementCode {
                code,
                q4: field.q4() + 1,
            })
        }
    }

    pub fn code(self) -> u64 {
        self.0
    }

    /// Canonical homogeneous coordinates (1, y) or (0, 1).
    pub fn coords(self, field: &FieldSpec) -> (Felt, Felt) {
        if self.0 == field.q4() {
            (field.zero(), field.one())
        } else {
            (field.one(), Felt::new(self.0))
        }
    }

    pub fn is_infinity(self, field: &FieldSpec) -> bool {
        self.0 == field.q4()
    }
}

/// Weight distribution of a linear set: (weight, point count) pairs with
/// ascending weights and positive counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpectrum {
    pairs: Vec<(u8, u64)>,
}

impl WeightSpectrum {
    pub fn new(mut pairs: Vec<(u8, u64)>) -> Self {
        pairs.retain(|&(_, n)| n > 0);
        pairs.sort();
        WeightSpectrum { pairs }
    }

    pub fn pairs(&self) -> &[(u8, u64)] {
        &self.pairs
    }

    pub fn count_of(&self, weight: u8) -> u64 {
        self.pairs
            .iter()
            .find(|&&(w, _)| w == weight)
            .map_or(0, |&(_, n)| n)
    }

    pub fn size(&self) -> u64 {
        self.pairs.iter().map(|&(_, n)| n).sum()
    }

    pub fn max_weight(&self) -> u8 {
        self.pairs.last().map_or(0, |&(w, _)| w)
    }

    fn json_map(&self) -> BTreeMap<String, u64> {
        self.pairs
            .iter()
            .map(|&(w, n)| (w.to_string(), n))
            .collect()
    }
}

impl std::fmt::Display for WeightSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (w, n)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}: {n}")?;
        }
        write!(f, "}}")
    }
}

/// A linear set of PG(1, q⁴) as a sorted list of (canonical point, weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    points: Vec<(PointPg1, u8)>,
}

impl LinearSet {
    /// Builds L_{U_f} with weights by iterating x over GF(q⁴)*.
    pub fn of(field: &FieldSpec, poly: &QPoly) -> Self {
        let q4 = field.q4() as usize;
        // multiplicity m_P = |{x ≠ 0 : ⟨(x, f(x))⟩ = P}|; index = point code
        let mut mult = vec![0u64; q4 + 1];
        for x in field.units() {
            let y = poly.eval(field, x);
            mult[PointPg1::from_pair(field, x, y).code() as usize] += 1;
        }
        let q = field.q();
        let points = mult
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > 0)
            .map(|(code, &m)| {
                let mut w = 0u8;
                let mut power = 1u64;
                while power < m + 1 {
                    power *= q;
                    w += 1;
                }
                assert_eq!(power, m + 1, "multiplicity must be q^w − 1");
                (PointPg1(code as u64), w)
            })
            .collect();
        LinearSet { points }
    }

    pub fn size(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn points(&self) -> impl Iterator<Item = (PointPg1, u8)> + '_ {
        self.points.iter().copied()
    }

    /// Sorted canonical point codes, weights dropped.
    pub fn point_codes(&self) -> Vec<u64> {
        self.points.iter().map(|&(p, _)| p.code()).collect()
    }

    pub fn weight_of(&self, point: PointPg1) -> Option<u8> {
        self.points
            .binary_search_by_key(&point, |&(p, _)| p)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn points_of_weight(&self, weight: u8) -> Vec<PointPg1> {
        self.points
            .iter()
            .filter(|&&(_, w)| w == weight)
            .map(|&(p, _)| p)
            .collect()
    }

    pub fn spectrum(&self) -> WeightSpectrum {
        let mut counts: BTreeMap<u8, u64> = BTreeMap::new();
        for &(_, w) in &self.points {
            *counts.entry(w).or_insert(0) += 1;
        }
        WeightSpectrum::new(counts.into_iter().collect())
    }

    /// All points of weight one; equivalently the size is q³+q²+q+1.
    pub fn is_scattered(&self) -> bool {
        self.points.iter().all(|&(_, w)| w == 1)
    }

    pub fn report(&self, field: &FieldSpec, b: Felt) -> LinearSetReport {
        LinearSetReport {
            q: field.q(),
            b: b.code(),
            size: self.size(),
            spectrum: self.spectrum().json_map(),
            points: self.point_codes(),
        }
    }
}

/// JSON shape: {"q":…, "b":…, "size":…, "spectrum":{"1":…, "2":…}, "points":[…]}.
#[derive(Debug, Clone, Serialize)]
pub struct LinearSetReport {
    pub q: u64,
    pub b: u64,
    pub size: u64,
    pub spectrum: BTreeMap<String, u64>,
    pub points: Vec<u64>,
}

/// L_{U(b)} for the binomial family.
pub fn linear_set_of_b(field: &FieldSpec, b: Felt) -> LinearSet {
    LinearSet::of(field, &QPoly::lunardon_polverino(field, b))
}

/// Weight spectrum of L_{U_f}.
pub fn weight_spectrum(field: &FieldSpec, poly: &QPoly) -> WeightSpectrum {
    LinearSet::of(field, poly).spectrum()
}

/// Brute-force spectra of every L_{U(b)}, b in code order; the workhorse
/// sweep of the weight verification.
pub fn spectra_for_all_b(field: &FieldSpec) -> Vec<(u64, WeightSpectrum)> {
    crate::exec::map_range(field.q4(), |code| {
        (code, linear_set_of_b(field, Felt::new(code)).spectrum())
    })
}

/// Sequential twin of [`spectra_for_all_b`]; bit-identical output.
pub fn spectra_for_all_b_seq(field: &FieldSpec) -> Vec<(u64, WeightSpectrum)> {
    crate::exec::map_range_seq(field.q4(), |code| {
        (code, linear_set_of_b(field, Felt::new(code)).spectrum())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    fn gf81() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    #[test]
    fn pseudoregulus_case_is_scattered() {
        let f = gf16();
        let ls = linear_set_of_b(&f, f.zero());
        assert_eq!(ls.size(), 15);
        assert_eq!(ls.spectrum(), WeightSpectrum::new(vec![(1, 15)]));
        assert!(ls.is_scattered());
    }

    #[test]
    fn generator_case_has_three_double_points() {
        let f = gf16();
        let ls = linear_set_of_b(&f, f.generator());
        assert_eq!(ls.size(), 9);
        assert_eq!(ls.spectrum(), WeightSpectrum::new(vec![(1, 6), (2, 3)]));
        assert!(!ls.is_scattered());
    }

    #[test]
    fn unit_case_has_one_double_point_at_origin() {
        let f = gf16();
        let ls = linear_set_of_b(&f, f.one());
        assert_eq!(ls.size(), 13);
        assert_eq!(ls.spectrum(), WeightSpectrum::new(vec![(1, 12), (2, 1)]));
        // the double point is ⟨(1, 0)⟩
        let origin = PointPg1::from_pair(&f, f.one(), f.zero());
        assert_eq!(ls.weight_of(origin), Some(2));
    }

    #[test]
    fn partition_identity_all_qpolys_q2() {
        // Σ_P (q^{w(P)} − 1) = q⁴ − 1 for every q-polynomial
        let f = gf16();
        let q = f.q();
        for idx in 0..f.q4().pow(4) {
            let poly = QPoly::from_index(&f, idx).unwrap();
            let ls = LinearSet::of(&f, &poly);
            let total: u64 = ls
                .points()
                .map(|(_, w)| q.pow(w as u32) - 1)
                .sum();
            assert_eq!(total, f.q4() - 1);
        }
    }

    #[test]
    fn partition_identity_sampled_q3() {
        let f = gf81();
        let q = f.q();
        for seed in 0..200u64 {
            let idx = seed.wrapping_mul(2654435761) % f.q4().pow(4);
            let poly = QPoly::from_index(&f, idx).unwrap();
            let total: u64 = LinearSet::of(&f, &poly)
                .points()
                .map(|(_, w)| q.pow(w as u32) - 1)
                .sum();
            assert_eq!(total, f.q4() - 1);
        }
    }

    #[test]
    fn binomial_family_weights_and_size_bounds() {
        // weights ≤ 2 and |L_{U(b)}| ≥ q³+1 for every b
        for f in [gf16(), gf81()] {
            let q = f.q();
            for b in f.elements() {
                let ls = linear_set_of_b(&f, b);
                assert!(ls.spectrum().max_weight() <= 2, "b = {b}");
                assert!(ls.size() > q * q * q, "b = {b}");
            }
        }
    }

    #[test]
    fn origin_weight_equals_kernel_dimension() {
        for f in [gf16(), gf81()] {
            let q = f.q();
            for b in f.elements() {
                let poly = QPoly::lunardon_polverino(&f, b);
                let kernel_size = poly.kernel(&f).len() as u64;
                let dim = (0..5).find(|&d| q.pow(d) == kernel_size).unwrap() as u8;
                let ls = LinearSet::of(&f, &poly);
                let origin = PointPg1::from_pair(&f, f.one(), f.zero());
                assert_eq!(ls.weight_of(origin).unwrap_or(0), dim, "b = {b}");
            }
        }
    }

    #[test]
    fn infinity_point_never_in_graph_linear_set() {
        let f = gf16();
        for idx in [0u64, 5, 77, 65535] {
            let poly = QPoly::from_index(&f, idx).unwrap();
            let ls = LinearSet::of(&f, &poly);
            assert!(ls
                .points()
                .all(|(p, _)| !p.is_infinity(&f)));
        }
    }

    #[test]
    fn json_report_shape() {
        let f = gf16();
        let ls = linear_set_of_b(&f, f.one());
        let json = serde_json::to_value(ls.report(&f, f.one())).unwrap();
        assert_eq!(json["q"], 2);
        assert_eq!(json["b"], 1);
        assert_eq!(json["size"], 13);
        assert_eq!(json["spectrum"]["1"], 12);
        assert_eq!(json["spectrum"]["2"], 1);
        assert_eq!(json["points"].as_array().unwrap().len(), 13);
    }
}
