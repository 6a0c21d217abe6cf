//! Frobenius standard form of antisymmetric integer Gram matrices.
//!
//! For every Gram matrix `A` there is a unimodular `U` with
//! `U A Uᵀ = J₂ ⊗ diag(d₁, …, dₙ)`, `dₙ | … | d₁`, all `dᵢ > 0`. The chain
//! `d` (the lattice *type*) is unique; `U` is not.
//!
//! The reduction is a skew-symmetric Smith-type elimination. Every basis
//! change is applied as a congruence, so the accumulated transform is a
//! certificate by construction.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{is_unimodular, Int, IntMatrix};
use crate::lattice::GramMatrix;

/// Invariant chain `d₁ ≥ … ≥ dₙ` with `dᵢ₊₁ | dᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeType(Vec<Int>);

impl LatticeType {
    pub fn new(d: Vec<Int>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidType(
                "type must have at least one entry".into(),
            ));
        }
        if d.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidType("type entries must be positive".into()));
        }
        if d.windows(2).any(|w| !w[0].is_multiple_of(&w[1])) {
            return Err(Error::InvalidType(
                "each entry must be divisible by the next".into(),
            ));
        }
        Ok(Self(d))
    }

    pub fn from_i64(d: &[i64]) -> Result<Self> {
        Self::new(d.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Modulus of phase-space coordinate `i` in `0..2n` (component `i` and
    /// `n + i` share `dᵢ`).
    pub fn modulus(&self, i: usize) -> &Int {
        &self.0[i % self.0.len()]
    }

    /// Logical dimension `∏ dᵢ`.
    pub fn dimension(&self) -> Int {
        self.0.iter().product()
    }

    pub fn is_scaled(&self) -> bool {
        self.0.iter().all(|x| x == &self.0[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    /// Unimodular certificate, `u · a · uᵀ = J₂ ⊗ diag(d)`.
    pub u: IntMatrix,
    pub d: LatticeType,
}

pub fn standard_gram(d: &LatticeType) -> GramMatrix {
    let n = d.n();
    let a = IntMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            d.0[i].clone()
        } else if i == j + n {
            -d.0[j].clone()
        } else {
            Int::zero()
        }
    });
    GramMatrix::new(a).expect("standard form is a valid Gram matrix")
}

/// Reads off the type if `a` is already in Frobenius standard form.
fn as_standard(a: &GramMatrix) -> Option<LatticeType> {
    let n = a.n();
    let d: Vec<Int> = (0..n).map(|i| a.entry(i, n + i).clone()).collect();
    let ty = LatticeType::new(d).ok()?;
    (standard_gram(&ty) == *a).then_some(ty)
}

/// Working state: current Gram matrix in the current basis and the basis
/// itself, as rows over the original basis.
struct Reduction {
    g: IntMatrix,
    u: IntMatrix,
}

impl Reduction {
    /// `e_dst += k · e_src`.
    fn add(&mut self, dst: usize, src: usize, k: &Int) {
        self.u.add_row_multiple(dst, src, k);
        self.g.add_row_multiple(dst, src, k);
        self.g.add_col_multiple(dst, src, k);
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.u.swap_rows(i, j);
        self.g.swap_rows(i, j);
        self.g.swap_cols(i, j);
    }

    fn negate(&mut self, i: usize) {
        self.u.negate_row(i);
        self.g.negate_row(i);
        self.g.negate_col(i);
    }

    /// Nonzero entry of minimal magnitude in the trailing block starting at
    /// `from`; ties go to the lowest row, then the lowest column.
    fn pivot(&self, from: usize) -> Option<(usize, usize)> {
        let dim = self.g.rows();
        let mut best: Option<(usize, usize)> = None;
        for i in from..dim {
            for j in i + 1..dim {
                let e = self.g.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => e.abs() < self.g.get(bi, bj).abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Splits off a hyperbolic plane at positions `(p, p + 1)` whose value
    /// divides every entry of the remaining block.
    fn split_plane(&mut self, p: usize) {
        let q = p + 1;
        let dim = self.g.rows();
        loop {
            let (i, j) = self.pivot(p).expect("nondegenerate form has a pivot");
            self.swap(p, i);
            self.swap(q, j);
            let b = self.g.get(p, q).clone();

            let mut clean = true;
            for r in q + 1..dim {
                let k = self.g.get(p, r).div_floor(&b);
                if !k.is_zero() {
                    self.add(r, q, &-k);
                }
                let k = self.g.get(q, r).div_floor(&b);
                if !k.is_zero() {
                    self.add(r, p, &k);
                }
                clean &= self.g.get(p, r).is_zero() && self.g.get(q, r).is_zero();
            }
            if !clean {
                continue;
            }

            // The plane is split off; enforce that b divides the rest.
            let offender =
                (q + 1..dim).find(|&r| (r + 1..dim).any(|s| !self.g.get(r, s).is_multiple_of(&b)));
            match offender {
                Some(r) => self.add(p, r, &Int::one()),
                None => {
                    if b.is_negative() {
                        self.negate(q);
                    }
                    return;
                }
            }
        }
    }
}

pub fn frobenius_form(a: &GramMatrix) -> FrobeniusDecomposition {
    let dim = a.dim();
    let n = a.n();
    if let Some(d) = as_standard(a) {
        return FrobeniusDecomposition {
            u: IntMatrix::identity(dim),
            d,
        };
    }
    let mut red = Reduction {
        g: a.matrix().clone(),
        u: IntMatrix::identity(dim),
    };
    for k in 0..n {
        red.split_plane(2 * k);
    }
    // Planes come out with ascending values α₀ | α₁ | …; reverse them into
    // the non-increasing qqpp layout.
    let mut rows = Vec::with_capacity(dim);
    for k in (0..n).rev() {
        rows.push(red.u.row(2 * k).to_vec());
    }
    for k in (0..n).rev() {
        rows.push(red.u.row(2 * k + 1).to_vec());
    }
    let u = IntMatrix::from_rows(rows).expect("square");
    let d = (0..n)
        .rev()
        .map(|k| red.g.get(2 * k, 2 * k + 1).clone())
        .collect();
    FrobeniusDecomposition {
        u,
        d: LatticeType::new(d).expect("reduction yields a divisibility chain"),
    }
}

pub fn lattice_type(a: &GramMatrix) -> LatticeType {
    frobenius_form(a).d
}

pub fn symplectically_equivalent(a1: &GramMatrix, a2: &GramMatrix) -> Result<bool> {
    if a1.n() != a2.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} modes vs {} modes",
            a1.n(),
            a2.n()
        )));
    }
    Ok(lattice_type(a1) == lattice_type(a2))
}

/// Whether the basis change `u` is implemented by a symplectic
/// automorphism, i.e. `u` is unimodular and `u a uᵀ = a`.
pub fn is_gram_preserving(a: &GramMatrix, u: &IntMatrix) -> bool {
    u.is_square()
        && u.rows() == a.dim()
        && is_unimodular(u)
        && u.congruence(a.matrix()) == *a.matrix()
}
