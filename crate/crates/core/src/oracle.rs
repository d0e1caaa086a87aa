//! Brute-force group-action oracles.
//!
//! Everything the closed-form classifier claims is re-checked here by
//! exhaustive enumeration: PGL(2,q⁴) acting on canonical point sets,
//! semilinear twists x ↦ x^{p^k} on top of it, GL(2,q⁴) acting on the
//! subspaces U(b) vector-by-vector, the census of all graph subspaces
//! defining a fixed linear set, and the explicit four-equation coefficient
//! system for matrix equivalence of U(b) and U(c). Witnesses are verified
//! before they are returned, and searches return the first witness in
//! lexicographic enumeration order so parallel and serial runs agree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{Felt, FieldSpec};
use crate::linear_set::{linear_set_of_b, LinearSet, PointPg1};
use crate::qpoly::QPoly;

/// A 2×2 matrix over GF(q⁴) with an optional companion automorphism
/// x ↦ x^{p^twist}; the witness format of every oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Felt,
    pub b: Felt,
    pub c: Felt,
    pub d: Felt,
    /// Exponent k of the companion automorphism x ↦ x^{p^k}, in [0, 4e).
    pub twist: u32,
}

impl Mat2 {
    pub fn identity(field: &FieldSpec) -> Self {
        Mat2 {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
            twist: 0,
        }
    }

    pub fn det(&self, field: &FieldSpec) -> Felt {
        field.sub(field.mul(self.a, self.d), field.mul(self.b, self.c))
    }

    pub fn is_identity(&self, field: &FieldSpec) -> bool {
        self.a == field.one()
            && self.b.is_zero()
            && self.c.is_zero()
            && self.d == field.one()
            && self.twist == 0
    }

    /// Applies the semilinear map v ↦ M·v^{p^twist} to a vector.
    pub fn apply_vector(&self, field: &FieldSpec, v: (Felt, Felt)) -> (Felt, Felt) {
        let x = field.frobenius_p(v.0, self.twist);
        let y = field.frobenius_p(v.1, self.twist);
        (
            field.add(field.mul(self.a, x), field.mul(self.b, y)),
            field.add(field.mul(self.c, x), field.mul(self.d, y)),
        )
    }

    /// Image of a canonical point of PG(1,q⁴) under the collineation.
    pub fn apply_point(&self, field: &FieldSpec, p: PointPg1) -> PointPg1 {
        let (x, y) = self.apply_vector(field, p.coords(field));
        PointPg1::from_pair(field, x, y)
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]] twist {}",
            self.a, self.b, self.c, self.d, self.twist
        )
    }
}

/// Size guards for the exhaustive enumerations, overridable from the CLI.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Point-set oracles scan |PGL(2,q⁴)| ≈ q¹² matrices.
    pub max_pointset_q: u64,
    /// Subspace oracle scans (q⁴)⁴ matrices against q⁴ vectors each.
    pub max_subspace_q: u64,
    /// Graph census scans all (q⁴)⁴ q-polynomials.
    pub max_graph_q: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_pointset_q: 4,
            max_subspace_q: 3,
            max_graph_q: 2,
        }
    }
}

impl OracleLimits {
    /// Sets every guard to the same ceiling.
    pub fn uniform(q: u64) -> Self {
        OracleLimits {
            max_pointset_q: q,
            max_subspace_q: q,
            max_graph_q: q,
        }
    }
}

fn guard(field: &FieldSpec, limit: u64) -> Result<()> {
    if field.q() > limit {
        Err(Error::FieldTooLarge {
            q: field.q(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// Number of candidate indices in the normalized PGL(2,q⁴) enumeration:
/// first row (1, b) with c, d free, then first row (0, 1) with c, d free.
/// Singular combinations are skipped during the scan.
fn pgl_index_space(field: &FieldSpec) -> u64 {
    let q4 = field.q4();
    q4 * q4 * q4 + q4 * q4
}

/// Matrix for one enumeration index, in lexicographic witness order.
fn pgl_matrix(field: &FieldSpec, idx: u64) -> Option<Mat2> {
    let q4 = field.q4();
    let block = q4 * q4 * q4;
    let (a, b, c, d) = if idx < block {
        let b = idx / (q4 * q4);
        let c = (idx / q4) % q4;
        let d = idx % q4;
        (1, b, c, d)
    } else {
        let j = idx - block;
        (0, 1, j / q4, j % q4)
    };
    let m = Mat2 {
        a: Felt::new(a),
        b: Felt::new(b),
        c: Felt::new(c),
        d: Felt::new(d),
        twist: 0,
    };
    (!m.det(field).is_zero()).then_some(m)
}

/// True iff the collineation with matrix m maps the sorted code set `src`
/// into (hence, sizes being equal, onto) the sorted code set `dst`.
fn maps_onto(field: &FieldSpec, m: &Mat2, src: &[u64], dst: &[u64]) -> bool {
    src.iter().all(|&code| {
        let image = m.apply_point(field, PointPg1::from_code(field, code).expect("canonical"));
        dst.binary_search(&image.code()).is_ok()
    })
}

fn scan_pgl(field: &FieldSpec, src: &[u64], dst: &[u64]) -> Option<Mat2> {
    exec::find_map_first_range(pgl_index_space(field), |idx| {
        let m = pgl_matrix(field, idx)?;
        maps_onto(field, &m, src, dst).then_some(m)
    })
}

fn scan_pgl_seq(field: &FieldSpec, src: &[u64], dst: &[u64]) -> Option<Mat2> {
    exec::find_map_first_range_seq(pgl_index_space(field), |idx| {
        let m = pgl_matrix(field, idx)?;
        maps_onto(field, &m, src, dst).then_some(m)
    })
}

/// Exhaustive PGL(2,q⁴) search for a projectivity mapping L_{U(b)} onto
/// L_{U(c)}; the returned witness is the first in lexicographic order.
pub fn bf_pgl_equivalent(field: &FieldSpec, b: Felt, c: Felt, limits: &OracleLimits) -> Result<Option<Mat2>> {
    guard(field, limits.max_pointset_q)?;
    let src = linear_set_of_b(field, b).point_codes();
    let dst = linear_set_of_b(field, c).point_codes();
    if src.len() != dst.len() {
        return Ok(None);
    }
    Ok(scan_pgl(field, &src, &dst))
}

/// Sequential twin of [`bf_pgl_equivalent`]; bit-identical witness.
pub fn bf_pgl_equivalent_seq(
    field: &FieldSpec,
    b: Felt,
    c: Felt,
    limits: &OracleLimits,
) -> Result<Option<Mat2>> {
    guard(field, limits.max_pointset_q)?;
    let src = linear_set_of_b(field, b).point_codes();
    let dst = linear_set_of_b(field, c).point_codes();
    if src.len() != dst.len() {
        return Ok(None);
    }
    Ok(scan_pgl_seq(field, &src, &dst))
}

/// Exhaustive PΓL(2,q⁴) search: all 4e Frobenius twists composed with the
/// PGL scan, twists in ascending order.
pub fn bf_pgammal_equivalent(
    field: &FieldSpec,
    b: Felt,
    c: Felt,
    limits: &OracleLimits,
) -> Result<Option<Mat2>> {
    guard(field, limits.max_pointset_q)?;
    let src = linear_set_of_b(field, b).point_codes();
    let dst = linear_set_of_b(field, c).point_codes();
    if src.len() != dst.len() {
        return Ok(None);
    }
    for k in 0..4 * field.e() {
        let twisted = twist_codes(field, &src, k);
        if let Some(m) = scan_pgl(field, &twisted, &dst) {
            return Ok(Some(Mat2 { twist: k, ..m }));
        }
    }
    Ok(None)
}

/// Point codes of the image of a canonical point set under x ↦ x^{p^k}.
fn twist_codes(field: &FieldSpec, codes: &[u64], k: u32) -> Vec<u64> {
    let mut out: Vec<u64> = codes
        .iter()
        .map(|&code| {
            if code == field.q4() {
                code
            } else {
                field.frobenius_p(Felt::new(code), k).code()
            }
        })
        .collect();
    out.sort();
    out
}

/// Exhaustive GL(2,q⁴) search for a matrix with {M·v : v ∈ U_f} = U_g as
/// vector sets.
pub fn bf_gl_equivalent_subspace(
    field: &FieldSpec,
    f_poly: &QPoly,
    g_poly: &QPoly,
    limits: &OracleLimits,
) -> Result<Option<Mat2>> {
    guard(field, limits.max_subspace_q)?;
    let q4 = field.q4();
    let f_vals: Vec<Felt> = field.elements().map(|x| f_poly.eval(field, x)).collect();
    let g_vals: Vec<Felt> = field.elements().map(|x| g_poly.eval(field, x)).collect();
    let total = q4 * q4 * q4 * q4;
    Ok(exec::find_map_first_range(total, |idx| {
        let m = Mat2 {
            a: Felt::new(idx / (q4 * q4 * q4)),
            b: Felt::new((idx / (q4 * q4)) % q4),
            c: Felt::new((idx / q4) % q4),
            d: Felt::new(idx % q4),
            twist: 0,
        };
        if m.det(field).is_zero() {
            return None;
        }
        let maps = field.elements().all(|x| {
            let fx = f_vals[x.code() as usize];
            let u = field.add(field.mul(m.a, x), field.mul(m.b, fx));
            let v = field.add(field.mul(m.c, x), field.mul(m.d, fx));
            v == g_vals[u.code() as usize]
        });
        maps.then_some(m)
    }))
}

/// Verifies that diag(b^{q³}, b^{q²}) maps U(b) onto U(b)^{q²}
/// element-by-element (U(0) = U(0)^{q²} is checked directly), the identity
/// behind "every L_{U(b)} is of GL-class one".
pub fn verify_glone_matrix(field: &FieldSpec, b: Felt) -> bool {
    let poly = QPoly::lunardon_polverino(field, b);
    if b.is_zero() {
        // U(0)^{q²} = U(0): (u, u^{q³})^{q²} must land back in the graph
        return field.elements().all(|u| {
            let s = field.frobenius(u, 2);
            let t = field.frobenius(poly.eval(field, u), 2);
            t == poly.eval(field, s)
        });
    }
    let m = Mat2 {
        a: field.frobenius(b, 3),
        b: field.zero(),
        c: field.zero(),
        d: field.frobenius(b, 2),
        twist: 0,
    };
    field.elements().all(|u| {
        let (s, t) = m.apply_vector(field, (u, poly.eval(field, u)));
        // (s, t) ∈ U(b)^{q²}  ⟺  (s^{q²}, t^{q²}) ∈ U(b)
        field.frobenius(t, 2) == poly.eval(field, field.frobenius(s, 2))
    })
}

/// Result of the graph-subspace census for one b.
#[derive(Debug, Clone, Serialize)]
pub struct GraphCensus {
    pub b: u64,
    /// Number of q-polynomials g with L_{U_g} = L_{U(b)} as point sets.
    pub matching_polynomials: u64,
    /// Whether every matching graph is GL(2,q⁴)-equivalent to U(b).
    pub single_gl_orbit: bool,
}

/// Scans all (q⁴)⁴ q-polynomials g for L_{U_g} = L_{U(b)} and verifies the
/// matches form a single GL(2,q⁴)-orbit. Restricting to graph subspaces is
/// sound here because ⟨(0,1)⟩ never lies in L_{U(b)}, so every subspace
/// defining the same linear set is itself a graph.
pub fn gammal_class_census(
    field: &FieldSpec,
    b: Felt,
    limits: &OracleLimits,
) -> Result<GraphCensus> {
    guard(field, limits.max_graph_q)?;
    let target = linear_set_of_b(field, b).point_codes();
    let total = field.q4().pow(4);
    let matches: Vec<u64> = exec::map_range(total, |idx| {
        let poly = QPoly::from_index(field, idx).expect("index in range");
        (LinearSet::of(field, &poly).point_codes() == target).then_some(idx)
    })
    .into_iter()
    .flatten()
    .collect();
    let fb = QPoly::lunardon_polverino(field, b);
    assert!(
        matches.contains(&fb.index(field)),
        "the defining polynomial matches itself"
    );
    let mut single = true;
    for &idx in &matches {
        let g = QPoly::from_index(field, idx).expect("index in range");
        if bf_gl_equivalent_subspace(field, &fb, &g, limits)?.is_none() {
            single = false;
        }
    }
    Ok(GraphCensus {
        b: b.code(),
        matching_polynomials: matches.len() as u64,
        single_gl_orbit: single,
    })
}

/// Constructive solver for the four-equation coefficient system of
/// U(b) ↦ U(c) under (A,B;C,D) with companion automorphism ψ = p^k:
/// a diagonal witness when b^ψ/c is a (q²−1)-th power (D ≠ 0 branch), an
/// antidiagonal one when B^{q³−q} = −b^{ψq}c is solvable and the derived C
/// is nonzero (D = 0 branch). Every candidate is verified set-wise on U(c)
/// before it is returned.
pub fn solve_sistema(field: &FieldSpec, b: Felt, c: Felt, k: u32) -> Option<Mat2> {
    let q = field.q() as i64;
    let b_psi = field.frobenius_p(b, k);
    if b.is_zero() && c.is_zero() {
        let m = Mat2 {
            twist: k,
            ..Mat2::identity(field)
        };
        debug_assert!(eq_matriciale_holds(field, b, c, &m));
        return Some(m);
    }
    if b.is_zero() || c.is_zero() {
        return None;
    }
    // D ≠ 0: A = D^q and D^{q²−1} = b^ψ/c
    let ratio = field.div(b_psi, c).expect("c nonzero");
    if let Some(dd) = field
        .solve_power_root(ratio, q * q - 1)
        .expect("ratio nonzero")
    {
        let m = Mat2 {
            a: field.pow(dd, q).expect("root nonzero"),
            b: field.zero(),
            c: field.zero(),
            d: dd,
            twist: k,
        };
        if eq_matriciale_holds(field, b, c, &m) {
            return Some(m);
        }
    }
    // D = 0 forces A = 0; B^{q³−q} = −b^{ψq}·c and C = B^q c + B^{q³} b^{ψq³}
    let target = field.neg(field.mul(field.frobenius(b_psi, 1), c));
    if let Some(bb) = field
        .solve_power_root(target, q * q * q - q)
        .expect("target nonzero")
    {
        let cc = field.add(
            field.mul(field.pow(bb, q).expect("root nonzero"), c),
            field.mul(
                field.pow(bb, q * q * q).expect("root nonzero"),
                field.frobenius(b_psi, 3),
            ),
        );
        if !cc.is_zero() {
            let m = Mat2 {
                a: field.zero(),
                b: bb,
                c: cc,
                d: field.zero(),
                twist: k,
            };
            if eq_matriciale_holds(field, b, c, &m) {
                return Some(m);
            }
        }
    }
    None
}

/// Membership form of the matrix equation: {M·v^{p^k} : v ∈ U(b)} = U(c),
/// checked vector-by-vector.
pub fn eq_matriciale_holds(field: &FieldSpec, b: Felt, c: Felt, m: &Mat2) -> bool {
    if m.det(field).is_zero() {
        return false;
    }
    let fb = QPoly::lunardon_polverino(field, b);
    let fc = QPoly::lunardon_polverino(field, c);
    field.elements().all(|u| {
        let (s, t) = m.apply_vector(field, (u, fb.eval(field, u)));
        t == fc.eval(field, s)
    })
}

/// Machine-readable verification record.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub q: u64,
    pub pairs_tested: u64,
    pub agreements: u64,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, q: u64) -> Self {
        VerificationReport {
            check: check.into(),
            q,
            pairs_tested: 0,
            agreements: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.pairs_tested += 1;
        if ok {
            self.agreements += 1;
        } else {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
