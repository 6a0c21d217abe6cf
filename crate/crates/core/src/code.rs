//! GKP stabilizer groups as (Gram matrix, sector) pairs.
//!
//! The stabilizer is generated by `e^{2πi tᵢ} D(ξᵢ)` for the stored basis
//! `ξᵢ`; the vector of turns `tᵢ` is the sector. Displacements compose as
//! `D(x) D(y) = e^{-iπ xᵀJy} D(x + y)`, so the element with lattice
//! coordinates `m` carries the turn
//!
//! ```text
//! t(m) = Σᵢ mᵢ tᵢ − ½ Σ_{i<j} mᵢ mⱼ aᵢⱼ   (mod 1)
//! ```
//!
//! which is the phase of the ordered word `g₁^{m₁} ⋯ g₂ₙ^{m₂ₙ}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac, is_unimodular, rat_inverse, to_int_vec, Int, IntMatrix, Rat};
use crate::lattice::{DualCoords, GramMatrix, PrimalCoords};
use crate::normal_form::is_gram_preserving;

/// A phase `e^{2πi t}` stored as the exact rational `t ∈ [0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn(Rat);

impl Turn {
    pub fn new(t: Rat) -> Self {
        Turn(frac(&t))
    }

    pub fn zero() -> Self {
        Turn(Rat::zero())
    }

    pub fn half() -> Self {
        Turn(Rat::new(Int::one(), Int::from(2)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rat::new(Int::from(num), Int::from(den)))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({})", self.0)
    }
}

impl Add for Turn {
    type Output = Turn;
    fn add(self, rhs: Turn) -> Turn {
        Turn::new(self.0 + rhs.0)
    }
}

impl Sub for Turn {
    type Output = Turn;
    fn sub(self, rhs: Turn) -> Turn {
        Turn::new(self.0 - rhs.0)
    }
}

impl Neg for Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        Turn::new(-self.0)
    }
}

/// `e^{2πi·phase} D(coordsᵀ M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerElement {
    pub coords: Vec<Int>,
    pub phase: Turn,
}

impl StabilizerElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            coords: vec![Int::zero(); dim],
            phase: Turn::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkpCode {
    gram: GramMatrix,
    sector: Vec<Turn>,
}

impl GkpCode {
    pub fn new(gram: GramMatrix, sector: Vec<Turn>) -> Result<Self> {
        if sector.len() != gram.dim() {
            return Err(Error::DimensionMismatch(format!(
                "sector has {} entries, lattice dimension is {}",
                sector.len(),
                gram.dim()
            )));
        }
        Ok(Self { gram, sector })
    }

    pub fn trivial_sector(gram: GramMatrix) -> Self {
        let sector = vec![Turn::zero(); gram.dim()];
        Self { gram, sector }
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn sector(&self) -> &[Turn] {
        &self.sector
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    /// Phase of the stabilizer element with integer coordinates `m`.
    pub fn phase_of_integer(&self, m: &[Int]) -> Turn {
        assert_eq!(
            m.len(),
            self.dim(),
            "coordinate vector has the wrong length"
        );
        let mut t = Rat::zero();
        for (mi, ti) in m.iter().zip(&self.sector) {
            t += Rat::from_integer(mi.clone()) * ti.value();
        }
        let mut cross = Int::zero();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                cross += &m[i] * &m[j] * self.gram.entry(i, j);
            }
        }
        Turn::new(t - Rat::new(cross, Int::from(2)))
    }

    pub fn phase_of_element(&self, m: &PrimalCoords) -> Result<Turn> {
        let m = to_int_vec(&m.0).ok_or(Error::NonIntegerExponent)?;
        Ok(self.phase_of_integer(&m))
    }

    pub fn element(&self, m: &[Int]) -> StabilizerElement {
        StabilizerElement {
            coords: m.to_vec(),
            phase: self.phase_of_integer(m),
        }
    }

    /// Product `e1 · e2` under the displacement composition rule.
    pub fn compose_elements(
        &self,
        e1: &StabilizerElement,
        e2: &StabilizerElement,
    ) -> StabilizerElement {
        let x = PrimalCoords::from_ints(&e1.coords);
        let y = PrimalCoords::from_ints(&e2.coords);
        let cocycle = self.gram.symplectic_product(&x, &y) / Rat::from_integer(Int::from(2));
        StabilizerElement {
            coords: e1
                .coords
                .iter()
                .zip(&e2.coords)
                .map(|(a, b)| a + b)
                .collect(),
            phase: e1.phase.clone() + e2.phase.clone() - Turn::new(cocycle),
        }
    }

    /// Conjugation by `D(η)` with `η = hᵀ M⊥`: since `ηᵀ J ξᵢ = hᵢ`, each
    /// generator picks up `e^{-2πi hᵢ}`.
    pub fn displace(&self, h: &DualCoords) -> GkpCode {
        assert_eq!(h.0.len(), self.dim(), "displacement has the wrong length");
        let sector = self
            .sector
            .iter()
            .zip(&h.0)
            .map(|(t, hi)| t.clone() - Turn::new(hi.clone()))
            .collect();
        GkpCode {
            gram: self.gram.clone(),
            sector,
        }
    }

    /// The same stabilizer group described in the basis `M' = u M`.
    pub fn rebase(&self, u: &IntMatrix) -> Result<GkpCode> {
        if u.rows() != self.dim() || !is_unimodular(u) {
            return Err(Error::NotUnimodular);
        }
        let gram = GramMatrix::new(u.congruence(self.gram.matrix()))?;
        let sector = (0..u.rows())
            .map(|j| self.phase_of_integer(u.row(j)))
            .collect();
        Ok(GkpCode { gram, sector })
    }

    /// The code `Ŝ 𝒮 Ŝ†` for the automorphism with primal representation
    /// `u` (`S ξᵢ = Σⱼ uᵢⱼ ξⱼ`), re-expressed in the original basis.
    ///
    /// In the conjugated group the generator `ξⱼ` carries the phase the
    /// original group assigns to `S⁻¹ ξⱼ`, whose coordinates are row `j` of
    /// `u⁻¹`.
    pub fn conjugate_by_automorphism(&self, u: &IntMatrix) -> Result<GkpCode> {
        if !is_gram_preserving(&self.gram, u) {
            return Err(Error::NotAutomorphism);
        }
        let inv = rat_inverse(u)?
            .to_int()
            .expect("unimodular inverse is integral");
        let sector = (0..inv.rows())
            .map(|j| self.phase_of_integer(inv.row(j)))
            .collect();
        Ok(GkpCode {
            gram: self.gram.clone(),
            sector,
        })
    }

    pub fn codes_equal(&self, other: &GkpCode) -> Result<bool> {
        if self.gram != other.gram {
            return Err(Error::GramMismatch);
        }
        Ok(self.sector == other.sector)
    }

    pub fn is_trivial_sector(&self) -> bool {
        self.sector.iter().all(Turn::is_zero)
    }
}

pub fn trivial_sector(a: &GramMatrix) -> GkpCode {
    GkpCode::trivial_sector(a.clone())
}
