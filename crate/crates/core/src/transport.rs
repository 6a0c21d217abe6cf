//! Discrete loops on the code moduli space and their monodromy.
//!
//! A path is a word of moves over a base code. Lifting folds the word into a
//! single normalizer element; when the word closes up, that element's logical
//! action is the monodromy of the loop.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::clifford::{eta_s, logical_action, LogicalClifford, NormalizerElement};
use crate::code::GkpCode;
use crate::error::{Error, Result};
use crate::exact::{rat_inverse, Int, IntMatrix};
use crate::lattice::{symplectic_form, DualCoords, GramMatrix};
use crate::normal_form::{frobenius_form, is_gram_preserving, LatticeType};

pub const DEFAULT_SNAP_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    /// Primal automorphism `u`.
    Aut(IntMatrix),
    /// Displacement by dual coordinates `h`.
    Displace(DualCoords),
    /// Segment `exp(τ x)` of a one-parameter symplectic flow.
    Flow { x: DMatrix<f64>, duration: f64 },
}

impl Move {
    pub fn inverse(&self) -> Result<Move> {
        Ok(match self {
            Move::Aut(u) => Move::Aut(
                rat_inverse(u)?
                    .to_int()
                    .ok_or(Error::InvalidMove("automorphism is not unimodular".into()))?,
            ),
            Move::Displace(h) => Move::Displace(DualCoords(h.0.iter().map(|x| -x).collect())),
            Move::Flow { x, duration } => Move::Flow {
                x: -x,
                duration: *duration,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathWord {
    pub base: GkpCode,
    pub moves: Vec<Move>,
}

impl PathWord {
    pub fn new(base: GkpCode, moves: Vec<Move>) -> Self {
        Self { base, moves }
    }

    pub fn empty(base: GkpCode) -> Self {
        Self::new(base, Vec::new())
    }

    /// Word with `m` inserted before position `at`.
    pub fn inserting(&self, at: usize, m: Vec<Move>) -> PathWord {
        let mut moves = self.moves.clone();
        moves.splice(at..at, m);
        PathWord::new(self.base.clone(), moves)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    pub endpoint: GkpCode,
    pub gate: Option<LogicalClifford>,
    pub is_loop: bool,
    /// Accumulated normalizer element `D(h) Ŝ`.
    pub element: NormalizerElement,
}

pub fn lift(word: &PathWord) -> Result<LiftResult> {
    let snapped = snap_flow(word, DEFAULT_SNAP_TOL)?;
    let a = snapped.base.gram().clone();
    let mut code = snapped.base.clone();
    let mut acc = NormalizerElement::identity(a.dim());
    for m in &snapped.moves {
        let step = match m {
            Move::Aut(u) => {
                check_aut(&a, u)?;
                code = code.conjugate_by_automorphism(u)?;
                NormalizerElement::automorphism(u.clone())
            }
            Move::Displace(h) => {
                if h.0.len() != a.dim() {
                    return Err(Error::InvalidMove(
                        "displacement has the wrong length".into(),
                    ));
                }
                code = code.displace(h);
                NormalizerElement::displacement(h.clone())
            }
            Move::Flow { .. } => unreachable!("flows are snapped before folding"),
        };
        acc = acc.then(&a, &step);
    }
    let is_loop = code.codes_equal(&snapped.base)?;
    let gate = if is_loop {
        Some(logical_action(&snapped.base, &acc.h, &acc.u)?)
    } else {
        None
    };
    Ok(LiftResult {
        endpoint: code,
        gate,
        is_loop,
        element: acc,
    })
}

fn check_aut(a: &GramMatrix, u: &IntMatrix) -> Result<()> {
    if u.rows() != a.dim() || !u.is_square() || !is_gram_preserving(a, u) {
        return Err(Error::InvalidMove(
            "automorphism does not preserve the Gram matrix".into(),
        ));
    }
    Ok(())
}

/// `w1` followed by `w2`; `w2` must start where `w1` ends.
pub fn concat(w1: &PathWord, w2: &PathWord) -> Result<PathWord> {
    let end = lift(w1)?.endpoint;
    if end.gram() != w2.base.gram() || !end.codes_equal(&w2.base)? {
        return Err(Error::BaseMismatch);
    }
    let mut moves = w1.moves.clone();
    moves.extend(w2.moves.iter().cloned());
    Ok(PathWord::new(w1.base.clone(), moves))
}

/// The word traversed backwards, based at the endpoint of `w`.
pub fn reverse(w: &PathWord) -> Result<PathWord> {
    let end = lift(w)?.endpoint;
    let moves = w
        .moves
        .iter()
        .rev()
        .map(Move::inverse)
        .collect::<Result<_>>()?;
    Ok(PathWord::new(end, moves))
}

/// Closes `w` into a loop by a final displacement undoing the sector drift.
pub fn closing_displacement(w: &PathWord) -> Result<PathWord> {
    let end = lift(w)?.endpoint;
    let h = DualCoords(
        end.sector()
            .iter()
            .zip(w.base.sector())
            .map(|(e, b)| (e.clone() - b.clone()).value().clone())
            .collect(),
    );
    let mut moves = w.moves.clone();
    moves.push(Move::Displace(h));
    Ok(PathWord::new(w.base.clone(), moves))
}

fn braid_generator(g: i64) -> Result<IntMatrix> {
    match g {
        1 => Ok(IntMatrix::from_i64(&[&[1, 1], &[0, 1]])),
        2 => Ok(IntMatrix::from_i64(&[&[1, 0], &[-1, 1]])),
        _ => Err(Error::InvalidGenerator(g)),
    }
}

/// Loop word of a braid on the single-mode code of type `(d)`: each
/// generator is followed by the displacement `η_S` that returns the sector
/// to the trivial one.
pub fn braid_word(d: u64, word: &[i64]) -> Result<PathWord> {
    let ty = LatticeType::new(vec![Int::from(d)])?;
    let base = GkpCode::trivial_sector(crate::normal_form::standard_gram(&ty));
    let mut moves = Vec::with_capacity(2 * word.len());
    let a = base.gram().clone();
    for &g in word {
        let u = braid_generator(g.abs()).map_err(|_| Error::InvalidGenerator(g))?;
        let fix = NormalizerElement {
            h: eta_s(&base, &u)?,
            u,
        };
        // σ⁻¹ is the inverse of the corrected σ loop, not a separately
        // corrected A⁻¹, so that σσ⁻¹ lifts to the identity exactly.
        let step = if g > 0 { fix } else { fix.inverse(&a) };
        moves.push(Move::Aut(step.u));
        moves.push(Move::Displace(step.h));
    }
    Ok(PathWord::new(base, moves))
}

pub fn braid_to_gate(d: u64, word: &[i64]) -> Result<LogicalClifford> {
    Ok(braid_lift(d, word)?.0)
}

/// Gate of a braid together with its composite unimodular.
pub fn braid_lift(d: u64, word: &[i64]) -> Result<(LogicalClifford, IntMatrix)> {
    let r = lift(&braid_word(d, word)?)?;
    let gate = r.gate.ok_or(Error::NotALoop)?;
    Ok((gate, r.element.u))
}

/// Real generator `M` with `M J Mᵀ = a`, built from the Frobenius basis.
pub fn frobenius_embedding(a: &GramMatrix) -> Result<DMatrix<f64>> {
    let f = frobenius_form(a);
    let w_inv = rat_inverse(&f.u)?;
    let n = a.n();
    let dim = a.dim();
    let root = |i: usize| f.d.modulus(i).to_f64().unwrap_or(f64::INFINITY).sqrt();
    let w_inv = DMatrix::from_fn(dim, dim, |i, j| {
        w_inv.get(i, j).to_f64().unwrap_or(f64::NAN)
    });
    let scale = DMatrix::from_fn(
        dim,
        dim,
        |i, j| if i == j { root(i % (2 * n)) } else { 0.0 },
    );
    Ok(w_inv * scale)
}

fn float_form(n: usize) -> DMatrix<f64> {
    let j = symplectic_form(n);
    DMatrix::from_fn(2 * n, 2 * n, |r, c| j.get(r, c).to_f64().unwrap_or(0.0))
}

/// Replaces every maximal run of flow moves by the automorphism its
/// endpoint lands on.
pub fn snap_flow(word: &PathWord, tol: f64) -> Result<PathWord> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Malformed("snap tolerance must be positive".into()));
    }
    if !word.moves.iter().any(|m| matches!(m, Move::Flow { .. })) {
        return Ok(word.clone());
    }
    let a = word.base.gram();
    let m = frobenius_embedding(a)?;
    let m_inv = m.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let j = float_form(a.n());
    let mut moves = Vec::with_capacity(word.moves.len());
    let mut run: Option<DMatrix<f64>> = None;
    for mv in &word.moves {
        match mv {
            Move::Flow { x, duration } => {
                if x.nrows() != a.dim() || x.ncols() != a.dim() {
                    return Err(Error::InvalidMove(
                        "flow generator has the wrong size".into(),
                    ));
                }
                let defect = (x.transpose() * &j + &j * x).amax();
                if defect.is_nan() || defect >= tol * x.amax().max(1.0) {
                    return Err(Error::InvalidMove(
                        "flow generator is not in the symplectic algebra".into(),
                    ));
                }
                let step = (x * *duration).exp();
                let acc = run
                    .take()
                    .unwrap_or_else(|| DMatrix::identity(a.dim(), a.dim()));
                run = Some(step * acc);
            }
            other => {
                if let Some(s) = run.take() {
                    moves.push(Move::Aut(snap_endpoint(a, &m, &m_inv, &j, &s, tol)?));
                }
                moves.push(other.clone());
            }
        }
    }
    if let Some(s) = run.take() {
        moves.push(Move::Aut(snap_endpoint(a, &m, &m_inv, &j, &s, tol)?));
    }
    Ok(PathWord::new(word.base.clone(), moves))
}

fn snap_endpoint(
    a: &GramMatrix,
    m: &DMatrix<f64>,
    m_inv: &DMatrix<f64>,
    j: &DMatrix<f64>,
    s: &DMatrix<f64>,
    tol: f64,
) -> Result<IntMatrix> {
    let defect = (s.transpose() * j * s - j).amax();
    if defect.is_nan() || defect >= tol {
        return Err(Error::SnapFailed { residual: defect });
    }
    let uf = m * s.transpose() * m_inv;
    let rounded = uf.map(f64::round);
    let residual = (&uf - &rounded).amax();
    if residual.is_nan() || residual >= tol || rounded.iter().any(|x| x.abs() > i64::MAX as f64) {
        return Err(Error::SnapFailed { residual });
    }
    let u = IntMatrix::from_fn(a.dim(), a.dim(), |r, c| Int::from(rounded[(r, c)] as i64));
    if !is_gram_preserving(a, &u) {
        return Err(Error::SnapFailed { residual });
    }
    Ok(u)
}
