//! q-polynomials over GF(q⁴): the GF(q)-linear maps x ↦ Σ_{i=0}^{3} cᵢ x^{qⁱ}.
//!
//! The family of interest is the binomial f_b(x) = b·x^q + x^{q³}, whose
//! graph {(x, f_b(x))} is the rank-4 subspace U(b) defining the linear set
//! L_{U(b)} of PG(1, q⁴).

use crate::error::Result;
use crate::field::{Felt, FieldSpec};

/// Coefficients (c₀, c₁, c₂, c₃) of Σ cᵢ x^{qⁱ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: [Felt; 4],
}

impl QPoly {
    pub fn new(coeffs: [Felt; 4]) -> Self {
        QPoly { coeffs }
    }

    /// The identity map x ↦ x.
    pub fn identity(field: &FieldSpec) -> Self {
        let mut coeffs = [field.zero(); 4];
        coeffs[0] = field.one();
        QPoly { coeffs }
    }

    /// The Lunardon–Polverino binomial f_b(x) = b·x^q + x^{q³}; its graph
    /// is the subspace U(b). b = 0 gives x ↦ x^{q³}, the pseudoregulus case.
    pub fn lunardon_polverino(field: &FieldSpec, b: Felt) -> Self {
        QPoly {
            coeffs: [field.zero(), b, field.zero(), field.one()],
        }
    }

    pub fn coeffs(&self) -> [Felt; 4] {
        self.coeffs
    }

    /// Packs the coefficient vector into an index in [0, (q⁴)⁴), the
    /// enumeration order of the graph-subspace census.
    pub fn index(&self, field: &FieldSpec) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| acc * field.q4() + c.code())
    }

    /// Inverse of [`QPoly::index`].
    pub fn from_index(field: &FieldSpec, index: u64) -> Result<Self> {
        let q4 = field.q4();
        let mut rem = index;
        let mut coeffs = [field.zero(); 4];
        for c in coeffs.iter_mut() {
            *c = field.element(rem % q4)?;
            rem /= q4;
        }
        if rem != 0 {
            return Err(crate::Error::BadElementCode {
                code: index,
                q4: q4.pow(4),
            });
        }
        Ok(QPoly { coeffs })
    }

    pub fn eval(&self, field: &FieldSpec, x: Felt) -> Felt {
        let mut acc = field.zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = field.add(acc, field.mul(c, field.frobenius(x, i as u32)));
            }
        }
        acc
    }

    /// The adjoint f̂ with Tr(f(x)·y) = Tr(x·f̂(y)) for all x, y:
    /// ĉ_j = c_{4−j mod 4}^{q^j}.
    pub fn adjoint(&self, field: &FieldSpec) -> Self {
        let mut coeffs = [field.zero(); 4];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = (4 - i) % 4;
            coeffs[j] = field.frobenius(c, j as u32);
        }
        QPoly { coeffs }
    }

    /// All roots of f; a GF(q)-subspace of GF(q⁴).
    pub fn kernel(&self, field: &FieldSpec) -> Vec<Felt> {
        field
            .elements()
            .filter(|&x| self.eval(field, x).is_zero())
            .collect()
    }

    /// The largest s | 4 such that the graph {(x, f(x))} is closed under
    /// multiplication by every scalar of GF(q^s); equivalently the largest
    /// s with f(λx) = λ·f(x) for all λ ∈ GF(q^s).
    pub fn max_field_of_linearity(&self, field: &FieldSpec) -> u32 {
        for s in [4u32, 2] {
            // closure under a generator of GF(q^s)* extends to the whole
            // subfield by q-linearity
            let step = (field.q4() - 1) / (field.q().pow(s) - 1);
            let lambda = field.g_pow(step as i64);
            let linear = field
                .elements()
                .all(|x| self.eval(field, field.mul(lambda, x)) == field.mul(lambda, self.eval(field, x)));
            if linear {
                return s;
            }
        }
        1
    }
}
