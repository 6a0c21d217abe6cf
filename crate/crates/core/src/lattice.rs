//! Symplectically integral lattices, represented intrinsically by their Gram
//! matrix `A = M J Mᵀ`.
//!
//! Points are carried in basis coordinates. A primal coordinate vector `c`
//! stands for `x = cᵀ M`; a dual coordinate vector `h` stands for
//! `x = hᵀ M⊥` where the canonical dual basis satisfies `M⊥ J Mᵀ = 1`. From
//! `M = A M⊥` the two are related by `h = -A c`.
//!
//! Phase space is ordered qqpp throughout, so the standard form
//! `J₂ ⊗ D` is the block matrix `[[0, D], [-D, 0]]`.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rat_inverse, Int, IntMatrix, Rat, RatMatrix};

pub const DEFAULT_GENERATOR_TOL: f64 = 1e-6;

/// The standard symplectic form `J₂ₙ` in qqpp ordering.
pub fn symplectic_form(n: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            Int::from(1)
        } else if i == j + n {
            Int::from(-1)
        } else {
            Int::zero()
        }
    })
}

/// Antisymmetric, nondegenerate integer matrix of pairwise symplectic
/// products of a lattice basis.
#[derive(Clone)]
pub struct GramMatrix {
    a: IntMatrix,
    inv: RatMatrix,
}

impl PartialEq for GramMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Eq for GramMatrix {}

impl std::fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GramMatrix({:?})", self.a)
    }
}

impl GramMatrix {
    pub fn new(a: IntMatrix) -> Result<Self> {
        if !a.is_square() || !a.rows().is_multiple_of(2) {
            return Err(Error::Malformed(format!(
                "Gram matrix must be square of even dimension, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if !a.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        let inv = rat_inverse(&a).map_err(|_| Error::Degenerate)?;
        Ok(Self { a, inv })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// Number of modes.
    pub fn n(&self) -> usize {
        self.a.rows() / 2
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inv
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        self.a.get(i, j)
    }

    /// Gram matrix of the canonical dual basis, `-A⁻¹`.
    pub fn dual_gram(&self) -> RatMatrix {
        self.inv.neg()
    }

    pub fn is_even(&self) -> bool {
        self.a.is_even()
    }

    /// `xᵀ A y` for primal coordinate vectors.
    pub fn symplectic_product(&self, x: &PrimalCoords, y: &PrimalCoords) -> Rat {
        self.check(&x.0);
        self.check(&y.0);
        dot(&x.0, &self.a.to_rat().mul_vec(&y.0))
    }

    /// Symplectic product of two points given in dual coordinates,
    /// `h₁ᵀ (-A⁻¹) h₂`.
    pub fn dual_symplectic_product(&self, x: &DualCoords, y: &DualCoords) -> Rat {
        self.check(&x.0);
        self.check(&y.0);
        dot(&x.0, &self.dual_gram().mul_vec(&y.0))
    }

    pub fn primal_to_dual(&self, c: &PrimalCoords) -> DualCoords {
        self.check(&c.0);
        DualCoords(self.a.neg().to_rat().mul_vec(&c.0))
    }

    pub fn dual_to_primal(&self, h: &DualCoords) -> PrimalCoords {
        self.check(&h.0);
        PrimalCoords(self.inv.neg().mul_vec(&h.0))
    }

    fn check(&self, v: &[Rat]) {
        assert_eq!(
            v.len(),
            self.dim(),
            "coordinate vector has the wrong length"
        );
    }
}

/// Coordinates against the stored lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimalCoords(pub Vec<Rat>);

/// Coordinates against the canonical dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualCoords(pub Vec<Rat>);

impl PrimalCoords {
    pub fn from_ints(v: &[Int]) -> Self {
        Self(v.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn is_lattice_point(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }
}

impl DualCoords {
    pub fn from_ints(v: &[Int]) -> Self {
        Self(v.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rat::zero(); dim])
    }

    pub fn is_dual_lattice_point(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }
}

/// Gram matrix `m J mᵀ` of a floating-point generator, rounded to integers.
///
/// Rounding that breaks antisymmetry is reported, never repaired.
pub fn gram_from_generator(m: &[Vec<f64>], tol: f64) -> Result<GramMatrix> {
    let dim = m.len();
    if dim == 0 || !dim.is_multiple_of(2) || m.iter().any(|r| r.len() != dim) {
        return Err(Error::Malformed(
            "generator must be a square matrix of even dimension".into(),
        ));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Malformed("tolerance must be positive".into()));
    }
    if m.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Malformed("generator has non-finite entries".into()));
    }
    let n = dim / 2;
    // (m J)_{ik} = m_{i,k-n} for k >= n, -m_{i,k+n} for k < n
    let mj = |i: usize, k: usize| if k >= n { m[i][k - n] } else { -m[i][k + n] };
    let mut worst = 0.0f64;
    let mut rounded = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for row in m {
            let v: f64 = (0..dim).map(|k| mj(i, k) * row[k]).sum();
            let r = v.round();
            worst = worst.max((v - r).abs());
            let r = r
                .to_i64()
                .ok_or_else(|| Error::Malformed("Gram entry out of range".into()))?;
            rounded.push(Int::from(r));
        }
    }
    if worst >= tol {
        return Err(Error::NotIntegral { residual: worst });
    }
    let a = IntMatrix::new(dim, dim, rounded)?;
    if !a.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    if a.det().is_zero() {
        return Err(Error::Degenerate);
    }
    GramMatrix::new(a)
}

/// Integer square root of the determinant, i.e. `|Pf(A)|`.
pub fn pfaffian_abs(a: &GramMatrix) -> Int {
    a.matrix().det().abs().sqrt()
}
