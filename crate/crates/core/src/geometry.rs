//! The projection geometry behind the canonical form of L_{U(b)}.
//!
//! Fixed frame throughout: the canonical subgeometry is
//! Σ = {⟨(u, u^q, u^{q²}, u^{q³})⟩ : u ∈ GF(q⁴)*} with pointwise stabilizer
//! generated by σ: ⟨(x₀,x₁,x₂,x₃)⟩ ↦ ⟨(x₃^q, x₀^q, x₁^q, x₂^q)⟩, and
//! Σ′ = Fix(σ²) ≅ PG(3,q²) is computed in the same frame rather than
//! through a GF(q²)-rational change of coordinates. Lines map to the Klein
//! quadric of PG(5,q⁴) through Plücker coordinates
//! (p₀₁,p₀₂,p₀₃,p₁₂,p₁₃,p₂₃) with quadratic form p₀₁p₂₃ − p₀₂p₁₃ + p₀₃p₁₂;
//! σ acts on Plücker coordinates through the induced semilinear map
//! (the literal coordinate-wise q-power is kept alongside and the
//! intertwining ℘∘σ = τ∘℘ is itself a test).
//!
//! The vertex line ℓ(b) = ⟨(0,0,1,0), (0,1,0,−b)⟩ never meets Σ, and the
//! pencil of planes through it projects Σ exactly onto the point set of
//! L_{U(b)}. When ℓ(b) misses Σ′ as well, it induces a regular spread of
//! Σ′, whose Plücker image spans a solid S; for scattered b the section
//! S ∩ S^τ ∩ K′ is a two-point τ-orbit whose pullbacks are the special
//! lines r, r^σ: skew, both meeting ℓ, and σ²-invariant.

use serde::Serialize;

use crate::classify::{classify_case, CaseLabel};
use crate::error::{Error, Result};
use crate::exec;
use crate::field::{Felt, FieldSpec};
use crate::linear_set::PointPg1;

/// A point of PG(3,q⁴): canonical homogeneous 4-tuple, first nonzero
/// coordinate scaled to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointPg3([Felt; 4]);

impl PointPg3 {
    /// Canonicalizes a nonzero coordinate vector.
    pub fn new(field: &FieldSpec, coords: [Felt; 4]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::DegenerateSpan)?;
        let inv = field.inv(*lead).expect("nonzero");
        Ok(PointPg3(coords.map(|c| field.mul(c, inv))))
    }

    pub fn coords(&self) -> [Felt; 4] {
        self.0
    }

    pub fn codes(&self) -> [u64; 4] {
        self.0.map(Felt::code)
    }
}

/// A line of PG(3,q⁴), stored as two distinct spanning points; identity is
/// by canonical Plücker coordinates, so any spanning pair of the same line
/// compares equal.
#[derive(Debug, Clone, Copy)]
pub struct LinePg3 {
    span: [PointPg3; 2],
    pluecker: PlueckerPoint,
}

impl PartialEq for LinePg3 {
    fn eq(&self, other: &Self) -> bool {
        self.pluecker == other.pluecker
    }
}

impl Eq for LinePg3 {}

impl PartialOrd for LinePg3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinePg3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.pluecker.cmp(&other.pluecker)
    }
}

impl std::hash::Hash for LinePg3 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pluecker.hash(state);
    }
}

impl LinePg3 {
    pub fn through(field: &FieldSpec, p: PointPg3, q: PointPg3) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateSpan);
        }
        let pluecker = PlueckerPoint::of_span(field, &p, &q)?;
        Ok(LinePg3 {
            span: [p, q],
            pluecker,
        })
    }

    pub fn span(&self) -> [PointPg3; 2] {
        self.span
    }

    pub fn pluecker(&self) -> PlueckerPoint {
        self.pluecker
    }

    /// All q⁴+1 points of the line.
    pub fn points(&self, field: &FieldSpec) -> Vec<PointPg3> {
        let [p, q] = self.span;
        let mut out: Vec<PointPg3> = field
            .elements()
            .map(|t| {
                let coords =
                    std::array::from_fn(|i| field.add(p.coords()[i], field.mul(t, q.coords()[i])));
                PointPg3::new(field, coords).expect("p and tq are independent")
            })
            .collect();
        out.push(q);
        out.sort();
        out
    }

    pub fn contains(&self, field: &FieldSpec, point: &PointPg3) -> bool {
        let [p, q] = self.span;
        rank(field, &[p.coords(), q.coords(), point.coords()]) <= 2
    }

    pub fn meets(&self, field: &FieldSpec, other: &LinePg3) -> bool {
        let rows = [
            self.span[0].coords(),
            self.span[1].coords(),
            other.span[0].coords(),
            other.span[1].coords(),
        ];
        rank(field, &rows) <= 3
    }
}

/// A point of PG(5,q⁴) written in Plücker slots (p₀₁,p₀₂,p₀₃,p₁₂,p₁₃,p₂₃),
/// canonicalized like any projective point. Points on the Klein quadric
/// satisfy p₀₁p₂₃ − p₀₂p₁₃ + p₀₃p₁₂ = 0 and are exactly the line images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlueckerPoint([Felt; 6]);

impl PlueckerPoint {
    pub fn new(field: &FieldSpec, coords: [Felt; 6]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::DegenerateSpan)?;
        let inv = field.inv(*lead).expect("nonzero");
        Ok(PlueckerPoint(coords.map(|c| field.mul(c, inv))))
    }

    fn of_span(field: &FieldSpec, p: &PointPg3, q: &PointPg3) -> Result<Self> {
        PlueckerPoint::new(field, pluecker_raw(field, &p.coords(), &q.coords()))
    }

    pub fn coords(&self) -> [Felt; 6] {
        self.0
    }

    pub fn codes(&self) -> [u64; 6] {
        self.0.map(Felt::code)
    }
}

/// The six 2×2 minors of the span matrix, slot order (01,02,03,12,13,23).
fn pluecker_raw(field: &FieldSpec, u: &[Felt; 4], v: &[Felt; 4]) -> [Felt; 6] {
    let minor =
        |i: usize, j: usize| field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i]));
    [
        minor(0, 1),
        minor(0, 2),
        minor(0, 3),
        minor(1, 2),
        minor(1, 3),
        minor(2, 3),
    ]
}

/// p₀₁p₂₃ − p₀₂p₁₃ + p₀₃p₁₂; zero exactly on line images.
pub fn klein_form(field: &FieldSpec, t: &[Felt; 6]) -> Felt {
    field.add(
        field.sub(field.mul(t[0], t[5]), field.mul(t[1], t[4])),
        field.mul(t[2], t[3]),
    )
}

/// Recovers the line from a Klein-quadric point: the antisymmetric matrix
/// of a decomposable bivector has rank two and its column space is the line.
pub fn line_from_pluecker(field: &FieldSpec, point: &PlueckerPoint) -> Result<LinePg3> {
    let t = point.coords();
    if !klein_form(field, &t).is_zero() {
        return Err(Error::DegenerateSpan);
    }
    let zero = field.zero();
    let m: [[Felt; 4]; 4] = [
        [zero, t[0], t[1], t[2]],
        [field.neg(t[0]), zero, t[3], t[4]],
        [field.neg(t[1]), field.neg(t[3]), zero, t[5]],
        [field.neg(t[2]), field.neg(t[4]), field.neg(t[5]), zero],
    ];
    let columns: Vec<[Felt; 4]> = (0..4)
        .map(|j| std::array::from_fn(|i| m[i][j]))
        .filter(|col: &[Felt; 4]| col.iter().any(|c| !c.is_zero()))
        .collect();
    let first = columns.first().ok_or(Error::DegenerateSpan)?;
    let second = columns
        .iter()
        .find(|col| rank(field, &[*first, **col]) == 2)
        .ok_or(Error::DegenerateSpan)?;
    LinePg3::through(
        field,
        PointPg3::new(field, *first)?,
        PointPg3::new(field, *second)?,
    )
}

/// σ: ⟨(x₀,x₁,x₂,x₃)⟩ ↦ ⟨(x₃^q, x₀^q, x₁^q, x₂^q)⟩, the order-4 generator
/// of the pointwise stabilizer of Σ.
pub fn sigma_point(field: &FieldSpec, p: &PointPg3) -> PointPg3 {
    let x = p.coords();
    PointPg3::new(
        field,
        [
            field.frobenius(x[3], 1),
            field.frobenius(x[0], 1),
            field.frobenius(x[1], 1),
            field.frobenius(x[2], 1),
        ],
    )
    .expect("collineations preserve nonzero vectors")
}

pub fn sigma_line(field: &FieldSpec, line: &LinePg3) -> LinePg3 {
    let [p, q] = line.span();
    LinePg3::through(field, sigma_point(field, &p), sigma_point(field, &q))
        .expect("collineations preserve spans")
}

pub fn is_sigma_fixed(field: &FieldSpec, p: &PointPg3) -> bool {
    sigma_point(field, p) == *p
}

pub fn is_sigma2_fixed(field: &FieldSpec, p: &PointPg3) -> bool {
    sigma_point(field, &sigma_point(field, p)) == *p
}

/// The literal coordinate-wise q^i-power on Plücker coordinates; fixes
/// every point with GF(q)-rational canonical coordinates.
pub fn pluecker_frobenius(field: &FieldSpec, p: &PlueckerPoint, i: u32) -> PlueckerPoint {
    PlueckerPoint::new(field, p.coords().map(|c| field.frobenius(c, i)))
        .expect("Frobenius preserves nonzero vectors")
}

/// The action induced by σ on raw Plücker vectors: the exterior square of
/// the cyclic coordinate shift composed with the q-power, so that
/// ℘(r^σ) = τ(℘(r)) for every line r.
pub fn sigma_pluecker_raw(field: &FieldSpec, t: &[Felt; 6]) -> [Felt; 6] {
    let f = |c: Felt| field.frobenius(c, 1);
    [
        field.neg(f(t[2])),
        field.neg(f(t[4])),
        field.neg(f(t[5])),
        f(t[0]),
        f(t[1]),
        f(t[3]),
    ]
}

pub fn sigma_pluecker(field: &FieldSpec, p: &PlueckerPoint) -> PlueckerPoint {
    PlueckerPoint::new(field, sigma_pluecker_raw(field, &p.coords()))
        .expect("semilinear maps preserve nonzero vectors")
}

/// Membership in K′ = ℘({lines of Σ′}): on the Klein quadric and fixed by
/// the square of the induced map.
pub fn in_k_prime(field: &FieldSpec, p: &PlueckerPoint) -> bool {
    klein_form(field, &p.coords()).is_zero()
        && sigma_pluecker(field, &sigma_pluecker(field, p)) == *p
}

/// The canonical subgeometry Σ ≅ PG(3,q): all ⟨(u, u^q, u^{q²}, u^{q³})⟩.
pub fn sigma_subgeometry(field: &FieldSpec) -> Vec<PointPg3> {
    let mut out: Vec<PointPg3> = field
        .units()
        .map(|u| {
            PointPg3::new(
                field,
                [
                    u,
                    field.frobenius(u, 1),
                    field.frobenius(u, 2),
                    field.frobenius(u, 3),
                ],
            )
            .expect("u nonzero")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Σ′ = Fix(σ²) ≅ PG(3,q²), enumerated directly: the σ²-fixed points are
/// exactly ⟨(x₀, x₁, x₀^{q²}/c, x₁^{q²}/c)⟩ with c^{q²+1} = 1, which in
/// canonical form is one point per (c, affine parameter).
pub fn sigma_prime_subgeometry(field: &FieldSpec) -> Vec<PointPg3> {
    let q = field.q() as i64;
    let mut out = Vec::new();
    for k in 0..(q * q + 1) {
        // the (q²+1)-element subgroup of (q²−1)-th powers
        let c = field.g_pow(k * (q * q - 1));
        let c_inv = field.inv(c).expect("nonzero");
        for t in field.elements() {
            let coords = [
                field.one(),
                t,
                c_inv,
                field.mul(field.frobenius(t, 2), c_inv),
            ];
            out.push(PointPg3::new(field, coords).expect("nonzero"));
        }
        out.push(
            PointPg3::new(field, [field.zero(), field.one(), field.zero(), c_inv])
                .expect("nonzero"),
        );
    }
    out.sort();
    out.dedup();
    out
}

/// Number of canonical points of PG(3,q⁴).
pub fn pg3_point_count(field: &FieldSpec) -> u64 {
    let q4 = field.q4();
    q4 * q4 * q4 + q4 * q4 + q4 + 1
}

/// Canonical point for an enumeration index (used by the full-space scans).
pub fn pg3_point_from_index(field: &FieldSpec, idx: u64) -> PointPg3 {
    let q4 = field.q4();
    let one = field.one();
    let zero = field.zero();
    let f = |c: u64| Felt::new(c);
    let (b1, b2, b3) = (q4 * q4 * q4, q4 * q4, q4);
    let coords = if idx < b1 {
        [one, f(idx / b2), f((idx / b3) % q4), f(idx % q4)]
    } else if idx < b1 + b2 {
        let j = idx - b1;
        [zero, one, f(j / b3), f(j % q4)]
    } else if idx < b1 + b2 + b3 {
        let j = idx - b1 - b2;
        [zero, zero, one, f(j)]
    } else {
        [zero, zero, zero, one]
    };
    PointPg3(coords)
}

/// Exhaustive scan for the fixed points of σ^power over all of PG(3,q⁴);
/// the closed-form subgeometries must coincide with this.
pub fn sigma_power_fixed_scan(field: &FieldSpec, power: u32) -> Vec<PointPg3> {
    let mut out: Vec<PointPg3> = exec::map_range(pg3_point_count(field), |idx| {
        let p = pg3_point_from_index(field, idx);
        let mut image = p;
        for _ in 0..power {
            image = sigma_point(field, &image);
        }
        (image == p).then_some(p)
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort();
    out
}

/// All lines of Σ: spans of distinct point pairs of Σ, deduplicated.
pub fn sigma_lines(field: &FieldSpec) -> Vec<LinePg3> {
    let points = sigma_subgeometry(field);
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            out.push(LinePg3::through(field, *p, *q).expect("distinct points"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The vertex line ℓ(b) = ⟨(0,0,1,0), (0,1,0,−b)⟩; disjoint from Σ for
/// every b since Σ has no point with first coordinate zero.
pub fn vertex_line(field: &FieldSpec, b: Felt) -> LinePg3 {
    let zero = field.zero();
    let one = field.one();
    let p = PointPg3::new(field, [zero, zero, one, zero]).expect("nonzero");
    let q = PointPg3::new(field, [zero, one, zero, field.neg(b)]).expect("nonzero");
    LinePg3::through(field, p, q).expect("independent generators")
}

/// Projects Σ from the vertex ℓ(b) through the pencil of planes: the plane
/// through ℓ(b) and P_u has dual coordinates [u^{q³}+b·u^q, −b·u, 0, −u],
/// and the pencil coordinate map reads the point ⟨(−D, A)⟩ = ⟨(u, f_b(u))⟩
/// off the first and negated fourth dual coordinates. The result must be
/// the point set of L_{U(b)}.
pub fn project_linear_set(field: &FieldSpec, b: Felt) -> Result<Vec<PointPg1>> {
    let vertex = vertex_line(field, b);
    if vertex
        .points(field)
        .iter()
        .any(|p| is_sigma_fixed(field, p))
    {
        return Err(Error::VertexMeetsSubgeometry);
    }
    let mut out: Vec<PointPg1> = field
        .units()
        .map(|u| {
            let plane = [
                field.add(field.frobenius(u, 3), field.mul(b, field.frobenius(u, 1))),
                field.neg(field.mul(b, u)),
                field.zero(),
                field.neg(u),
            ];
            let sigma_point_u = PointPg3::new(
                field,
                [
                    u,
                    field.frobenius(u, 1),
                    field.frobenius(u, 2),
                    field.frobenius(u, 3),
                ],
            )
            .expect("u nonzero");
            debug_assert!(incident(field, &plane, &vertex.span()[0]));
            debug_assert!(incident(field, &plane, &vertex.span()[1]));
            assert!(
                incident(field, &plane, &sigma_point_u),
                "plane formula must pass through P_u"
            );
            PointPg1::from_pair(field, field.neg(plane[3]), plane[0])
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn incident(field: &FieldSpec, plane: &[Felt; 4], point: &PointPg3) -> bool {
    let x = point.coords();
    let mut acc = field.zero();
    for i in 0..4 {
        acc = field.add(acc, field.mul(plane[i], x[i]));
    }
    acc.is_zero()
}

/// The regular spread of Σ′ induced by ℓ(b): the lines ⟨P, P^{σ²}⟩ for
/// P ∈ ℓ(b). Requires ℓ(b) ∩ Σ′ = ∅ (which fails exactly when
/// N_{q⁴/q²}(b) = 1).
pub fn regular_spread_from(field: &FieldSpec, b: Felt) -> Result<Vec<LinePg3>> {
    let vertex = vertex_line(field, b);
    let points = vertex.points(field);
    if points.iter().any(|p| is_sigma2_fixed(field, p)) {
        return Err(Error::VertexMeetsSubgeometry);
    }
    let mut out: Vec<LinePg3> = points
        .iter()
        .map(|p| {
            let image = sigma_point(field, &sigma_point(field, p));
            LinePg3::through(field, *p, image).expect("P is not σ²-fixed")
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The special line of a scattered L_{U(b)} together with its σ-image and
/// every predicate of interest, found through the Klein quadric.
#[derive(Debug, Clone)]
pub struct SpecialLine {
    pub line: LinePg3,
    pub partner: LinePg3,
    /// S ∩ K ≠ ∅, i.e. some line of Σ has its image on the spread solid.
    pub solid_meets_k: bool,
    /// The two points of S ∩ S^τ ∩ K′.
    pub tau_orbit: Vec<PlueckerPoint>,
    /// τ maps the two intersection points to each other.
    pub tau_orbit_swapped: bool,
    pub meets_vertex: bool,
    pub partner_meets_vertex: bool,
    pub skew_partner: bool,
    pub sigma2_invariant: bool,
}

impl SpecialLine {
    pub fn all_predicates_hold(&self) -> bool {
        !self.solid_meets_k
            && self.tau_orbit.len() == 2
            && self.tau_orbit_swapped
            && self.meets_vertex
            && self.partner_meets_vertex
            && self.skew_partner
            && self.sigma2_invariant
    }
}

/// Runs the Plücker route: spread image → solid S → S ∩ S^τ ∩ K′ → pull
/// back. Requires L_{U(b)} scattered.
pub fn find_special_line(field: &FieldSpec, b: Felt) -> Result<SpecialLine> {
    if classify_case(field, b) != CaseLabel::Scattered {
        return Err(Error::NotScattered);
    }
    let spread = regular_spread_from(field, b)?;
    let vertex = vertex_line(field, b);

    let image: Vec<[Felt; 6]> = spread.iter().map(|l| l.pluecker().coords()).collect();
    let solid = row_space(field, &image);
    assert_eq!(solid.len(), 4, "spread image must span a solid");
    let solid_forms = null_space(field, &solid);

    let solid_meets_k = sigma_lines(field).iter().any(|l| {
        let t = l.pluecker().coords();
        solid_forms.iter().all(|form| dot6(field, form, &t).is_zero())
    });

    let solid_tau: Vec<[Felt; 6]> = solid
        .iter()
        .map(|v| sigma_pluecker_raw(field, v))
        .collect();
    let tau_forms = null_space(field, &row_space(field, &solid_tau));
    let mut stacked = solid_forms.clone();
    stacked.extend_from_slice(&tau_forms);
    let meet = null_space(field, &row_space(field, &stacked));
    assert_eq!(meet.len(), 2, "S ∩ S^τ must be a line");

    // the q⁴+1 points of the intersection line in PG(5,q⁴)
    let mut tau_orbit: Vec<PlueckerPoint> = field
        .elements()
        .map(|t| {
            let coords = std::array::from_fn(|i| field.add(meet[0][i], field.mul(t, meet[1][i])));
            PlueckerPoint::new(field, coords).expect("independent basis")
        })
        .chain([PlueckerPoint::new(field, meet[1]).expect("basis vector")])
        .filter(|p| in_k_prime(field, p))
        .collect();
    tau_orbit.sort();
    tau_orbit.dedup();
    assert_eq!(
        tau_orbit.len(),
        2,
        "S ∩ S^τ ∩ K′ must be two points for scattered b"
    );
    let tau_orbit_swapped = sigma_pluecker(field, &tau_orbit[0]) == tau_orbit[1]
        && sigma_pluecker(field, &tau_orbit[1]) == tau_orbit[0];

    let first = line_from_pluecker(field, &tau_orbit[0])?;
    let second = line_from_pluecker(field, &tau_orbit[1])?;
    // deterministic choice: the smaller Plücker tuple is "the" line
    let (line, partner) = (first, second);
    debug_assert_eq!(sigma_line(field, &line), partner);

    Ok(SpecialLine {
        meets_vertex: line.meets(field, &vertex),
        partner_meets_vertex: partner.meets(field, &vertex),
        skew_partner: !line.meets(field, &partner),
        sigma2_invariant: sigma_line(field, &sigma_line(field, &line)) == line,
        line,
        partner,
        solid_meets_k,
        tau_orbit,
        tau_orbit_swapped,
    })
}

/// Exhaustive fallback: all spread lines r with r^σ meeting ℓ(b) and
/// r ∩ r^σ = ∅ (r ∩ ℓ ≠ ∅ and r^{σ²} = r hold by construction). Must be
/// exactly the two lines of the Plücker route.
pub fn special_lines_exhaustive(field: &FieldSpec, b: Felt) -> Result<Vec<LinePg3>> {
    if classify_case(field, b) != CaseLabel::Scattered {
        return Err(Error::NotScattered);
    }
    let vertex = vertex_line(field, b);
    let mut out: Vec<LinePg3> = regular_spread_from(field, b)?
        .into_iter()
        .filter(|r| {
            let image = sigma_line(field, r);
            image != *r && image.meets(field, &vertex) && !r.meets(field, &image)
        })
        .collect();
    out.sort();
    Ok(out)
}

// --- small exact linear algebra over GF(q⁴) ---

fn rank(field: &FieldSpec, rows: &[[Felt; 4]]) -> usize {
    let mut mat: Vec<[Felt; 4]> = rows.to_vec();
    gaussian(field, &mut mat)
}

/// Reduced row-echelon basis of the span of the given 6-vectors.
fn row_space(field: &FieldSpec, rows: &[[Felt; 6]]) -> Vec<[Felt; 6]> {
    let mut mat: Vec<[Felt; 6]> = rows.to_vec();
    let r = gaussian(field, &mut mat);
    mat.truncate(r);
    mat
}

#[allow(clippy::needless_range_loop)]
fn gaussian<const W: usize>(field: &FieldSpec, mat: &mut [[Felt; W]]) -> usize {
    let mut row = 0;
    for col in 0..W {
        let Some(pivot) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, pivot);
        let inv = field.inv(mat[row][col]).expect("pivot nonzero");
        for j in 0..W {
            mat[row][j] = field.mul(mat[row][j], inv);
        }
        for r in 0..mat.len() {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col];
                for j in 0..W {
                    mat[r][j] = field.sub(mat[r][j], field.mul(factor, mat[row][j]));
                }
            }
        }
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    row
}

/// Basis of {x : r·x = 0 for every row r}, from the reduced echelon form.
fn null_space(field: &FieldSpec, rows: &[[Felt; 6]]) -> Vec<[Felt; 6]> {
    let basis = row_space(field, rows);
    let mut pivots = Vec::new();
    for r in &basis {
        pivots.push((0..6).find(|&j| !r[j].is_zero()).expect("nonzero row"));
    }
    let mut out = Vec::new();
    for free in (0..6).filter(|j| !pivots.contains(j)) {
        let mut v = [field.zero(); 6];
        v[free] = field.one();
        for (r, &p) in basis.iter().zip(&pivots) {
            v[p] = field.neg(r[free]);
        }
        out.push(v);
    }
    out
}

fn dot6(field: &FieldSpec, a: &[Felt; 6], b: &[Felt; 6]) -> Felt {
    let mut acc = field.zero();
    for i in 0..6 {
        acc = field.add(acc, field.mul(a[i], b[i]));
    }
    acc
}

/// Everything checkable about the geometry of one b, JSON-ready.
#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub q: u64,
    pub b: u64,
    pub vertex: [[u64; 4]; 2],
    pub vertex_meets_sigma: bool,
    pub vertex_meets_sigma_prime: bool,
    pub projection_matches_linear_set: bool,
    pub spread: Option<SpreadReport>,
    pub special_line: Option<SpecialLineReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadReport {
    pub size: u64,
    pub pairwise_disjoint_on_sigma_prime: bool,
    pub covers_sigma_prime: bool,
    pub sigma_invariant_lines: u64,
    pub sigma2_invariant_lines: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialLineReport {
    pub line: [[u64; 4]; 2],
    pub partner: [[u64; 4]; 2],
    pub line_pluecker: [u64; 6],
    pub partner_pluecker: [u64; 6],
    pub solid_meets_k: bool,
    pub tau_orbit_size: u64,
    pub tau_orbit_swapped: bool,
    pub meets_vertex: bool,
    pub partner_meets_vertex: bool,
    pub skew_partner: bool,
    pub sigma2_invariant: bool,
    pub agrees_with_exhaustive_search: bool,
}

/// Runs every geometric check for one b. The spread and special-line
/// sections are present only where their hypotheses hold (ℓ ∩ Σ′ = ∅ for
/// the spread, scatteredness for the special line).
pub fn geometry_report(field: &FieldSpec, b: Felt) -> GeometryReport {
    let vertex = vertex_line(field, b);
    let vertex_points = vertex.points(field);
    let vertex_meets_sigma = vertex_points.iter().any(|p| is_sigma_fixed(field, p));
    let vertex_meets_sigma_prime = vertex_points.iter().any(|p| is_sigma2_fixed(field, p));

    let projection_matches_linear_set = match project_linear_set(field, b) {
        Ok(points) => {
            let expected = crate::linear_set::linear_set_of_b(field, b).point_codes();
            points.iter().map(|p| p.code()).collect::<Vec<_>>() == expected
        }
        Err(_) => false,
    };

    let spread = regular_spread_from(field, b).ok().map(|spread| {
        let sigma_prime = sigma_prime_subgeometry(field);
        let mut covered: Vec<PointPg3> = Vec::new();
        let mut disjoint = true;
        for line in &spread {
            let on_line: Vec<PointPg3> = line
                .points(field)
                .into_iter()
                .filter(|p| is_sigma2_fixed(field, p))
                .collect();
            for p in on_line {
                match covered.binary_search(&p) {
                    Ok(_) => disjoint = false,
                    Err(pos) => covered.insert(pos, p),
                }
            }
        }
        SpreadReport {
            size: spread.len() as u64,
            pairwise_disjoint_on_sigma_prime: disjoint,
            covers_sigma_prime: covered == sigma_prime,
            sigma_invariant_lines: spread
                .iter()
                .filter(|l| sigma_line(field, l) == **l)
                .count() as u64,
            sigma2_invariant_lines: spread
                .iter()
                .filter(|l| sigma_line(field, &sigma_line(field, l)) == **l)
                .count() as u64,
        }
    });

    let special_line = find_special_line(field, b).ok().map(|sl| {
        let exhaustive = special_lines_exhaustive(field, b).expect("scattered");
        let mut ours = vec![sl.line, sl.partner];
        ours.sort();
        let span_codes =
            |l: &LinePg3| -> [[u64; 4]; 2] { [l.span()[0].codes(), l.span()[1].codes()] };
        SpecialLineReport {
            line: span_codes(&sl.line),
            partner: span_codes(&sl.partner),
            line_pluecker: sl.line.pluecker().codes(),
            partner_pluecker: sl.partner.pluecker().codes(),
            solid_meets_k: sl.solid_meets_k,
            tau_orbit_size: sl.tau_orbit.len() as u64,
            tau_orbit_swapped: sl.tau_orbit_swapped,
            meets_vertex: sl.meets_vertex,
            partner_meets_vertex: sl.partner_meets_vertex,
            skew_partner: sl.skew_partner,
            sigma2_invariant: sl.sigma2_invariant,
            agrees_with_exhaustive_search: ours == exhaustive,
        }
    });

    GeometryReport {
        q: field.q(),
        b: b.code(),
        vertex: [vertex.span()[0].codes(), vertex.span()[1].codes()],
        vertex_meets_sigma,
        vertex_meets_sigma_prime,
        projection_matches_linear_set,
        spread,
        special_line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_set::linear_set_of_b;

    fn gf16() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    fn pt(field: &FieldSpec, codes: [u64; 4]) -> PointPg3 {
        PointPg3::new(field, codes.map(Felt::new)).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let f = gf16();
        let all_ones = pt(&f, [1, 1, 1, 1]);
        assert_eq!(sigma_point(&f, &all_ones), all_ones);
        assert_eq!(
            sigma_point(&f, &pt(&f, [0, 0, 1, 0])),
            pt(&f, [0, 0, 0, 1])
        );
    }

    #[test]
    fn sigma_has_order_four() {
        let f = gf16();
        for idx in (0..pg3_point_count(&f)).step_by(37) {
            let p = pg3_point_from_index(&f, idx);
            let mut image = p;
            for _ in 0..4 {
                image = sigma_point(&f, &image);
            }
            assert_eq!(image, p);
        }
    }

    #[test]
    fn sigma_fixed_points_are_exactly_sigma() {
        let f = gf16();
        assert_eq!(sigma_power_fixed_scan(&f, 1), sigma_subgeometry(&f));
    }

    #[test]
    fn sigma2_fixed_points_are_exactly_sigma_prime() {
        let f = gf16();
        let fixed = sigma_power_fixed_scan(&f, 2);
        assert_eq!(fixed, sigma_prime_subgeometry(&f));
        let q2 = f.q2();
        assert_eq!(
            fixed.len() as u64,
            q2 * q2 * q2 + q2 * q2 + q2 + 1,
            "Σ′ has the size of PG(3,q²)"
        );
    }

    #[test]
    fn subgeometry_sizes() {
        let f = gf16();
        let q = f.q();
        assert_eq!(
            sigma_subgeometry(&f).len() as u64,
            q * q * q + q * q + q + 1
        );
        assert_eq!(sigma_lines(&f).len() as u64, (q * q + 1) * (q * q + q + 1));
    }

    #[test]
    fn pluecker_unit_minors() {
        let f = gf16();
        let line = LinePg3::through(&f, pt(&f, [1, 0, 0, 0]), pt(&f, [0, 1, 0, 0])).unwrap();
        assert_eq!(line.pluecker().codes(), [1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn klein_form_vanishes_on_line_images() {
        let f = gf16();
        for (i, j) in [(3u64, 7u64), (5, 11), (2, 9), (14, 4)] {
            let p = pt(&f, [1, i, j, i ^ j]);
            let q = pt(&f, [0, 1, i, j]);
            let line = LinePg3::through(&f, p, q).unwrap();
            assert!(klein_form(&f, &line.pluecker().coords()).is_zero());
        }
    }

    #[test]
    fn pluecker_is_span_independent() {
        let f = gf16();
        let p = pt(&f, [1, 3, 5, 7]);
        let q = pt(&f, [0, 1, 2, 4]);
        let line = LinePg3::through(&f, p, q).unwrap();
        // re-span by two other points of the same line
        let pts = line.points(&f);
        for (a, b) in [(0usize, 5usize), (2, 9), (1, 16)] {
            let other = LinePg3::through(&f, pts[a], pts[b]).unwrap();
            assert_eq!(other, line);
        }
    }

    #[test]
    fn line_from_pluecker_round_trip() {
        let f = gf16();
        let line = LinePg3::through(&f, pt(&f, [1, 3, 5, 7]), pt(&f, [0, 1, 2, 4])).unwrap();
        let back = line_from_pluecker(&f, &line.pluecker()).unwrap();
        assert_eq!(back, line);
        // a non-Klein tuple is rejected
        let bogus = PlueckerPoint::new(&f, [1, 0, 0, 0, 0, 1].map(Felt::new)).unwrap();
        assert!(line_from_pluecker(&f, &bogus).is_err());
    }

    #[test]
    fn induced_map_intertwines_with_sigma() {
        // ℘(r^σ) = τ(℘(r)) on a spread of sample lines
        let f = gf16();
        for (i, j, k) in [(3u64, 7u64, 2u64), (5, 11, 9), (6, 1, 12), (15, 14, 8)] {
            let line = LinePg3::through(&f, pt(&f, [1, i, j, k]), pt(&f, [0, 1, k, i])).unwrap();
            let lhs = sigma_line(&f, &line).pluecker();
            let rhs = sigma_pluecker(&f, &line.pluecker());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn literal_tau_fixes_base_rational_points() {
        let f = gf16();
        let p = PlueckerPoint::new(&f, [1, 1, 0, 1, 0, 1].map(Felt::new)).unwrap();
        assert_eq!(pluecker_frobenius(&f, &p, 1), p);
    }

    #[test]
    fn induced_tau_squared_fixes_sigma_prime_line_images() {
        let f = gf16();
        for line in regular_spread_from(&f, f.zero()).unwrap() {
            let p = line.pluecker();
            assert!(in_k_prime(&f, &p));
        }
    }

    #[test]
    fn vertex_line_examples() {
        let f = gf16();
        let v = vertex_line(&f, f.zero());
        assert_eq!(v.span()[0].codes(), [0, 0, 1, 0]);
        assert_eq!(v.span()[1].codes(), [0, 1, 0, 0]);
        // ℓ(b) never meets Σ
        for b in f.elements() {
            assert!(!vertex_line(&f, b)
                .points(&f)
                .iter()
                .any(|p| is_sigma_fixed(&f, p)));
        }
    }

    #[test]
    fn vertex_meets_sigma_prime_exactly_in_case_two() {
        let f = gf16();
        for b in f.elements() {
            let meets = vertex_line(&f, b)
                .points(&f)
                .iter()
                .any(|p| is_sigma2_fixed(&f, p));
            let case_two = classify_case(&f, b) == CaseLabel::OneDoublePoint;
            assert_eq!(meets, case_two, "b = {b}");
        }
    }

    #[test]
    fn projection_reproduces_linear_set() {
        let f = gf16();
        for b in f.elements() {
            let projected: Vec<u64> = project_linear_set(&f, b)
                .unwrap()
                .iter()
                .map(|p| p.code())
                .collect();
            assert_eq!(projected, linear_set_of_b(&f, b).point_codes(), "b = {b}");
        }
    }

    #[test]
    fn spread_size_disjointness_and_invariance() {
        let f = gf16();
        let spread = regular_spread_from(&f, f.zero()).unwrap();
        assert_eq!(spread.len() as u64, f.q4() + 1);
        for line in &spread {
            assert_eq!(sigma_line(&f, &sigma_line(&f, line)), *line);
        }
        let report = geometry_report(&f, f.zero());
        let spread_report = report.spread.unwrap();
        assert!(spread_report.pairwise_disjoint_on_sigma_prime);
        assert!(spread_report.covers_sigma_prime);
        assert_eq!(spread_report.sigma_invariant_lines, 0);
        assert_eq!(spread_report.sigma2_invariant_lines, f.q4() + 1);
    }

    #[test]
    fn spread_requires_vertex_off_sigma_prime() {
        let f = gf16();
        // b = 1 is the one-double-point case: ℓ meets Σ′
        assert_eq!(
            regular_spread_from(&f, f.one()),
            Err(Error::VertexMeetsSubgeometry)
        );
    }

    #[test]
    fn special_line_for_pseudoregulus_q2() {
        let f = gf16();
        let sl = find_special_line(&f, f.zero()).unwrap();
        assert!(sl.all_predicates_hold());
        assert_eq!(sigma_line(&f, &sl.line), sl.partner);
        let mut ours = vec![sl.line, sl.partner];
        ours.sort();
        assert_eq!(ours, special_lines_exhaustive(&f, f.zero()).unwrap());
    }

    #[test]
    fn special_line_rejects_non_scattered() {
        let f = gf16();
        assert!(matches!(
            find_special_line(&f, f.generator()),
            Err(Error::NotScattered)
        ));
    }

    #[test]
    fn report_serializes() {
        let f = gf16();
        let report = geometry_report(&f, f.zero());
        assert!(report.projection_matches_linear_set);
        assert!(!report.vertex_meets_sigma);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["q"], 2);
        assert!(json["special_line"]["agrees_with_exhaustive_search"].as_bool().unwrap());
    }
}
