//! Logical data of normalizer elements `U_{η,S} = D(η) Ŝ`.
//!
//! An automorphism is carried by its primal matrix `u` (`S ξᵢ = Σⱼ uᵢⱼ ξⱼ`)
//! or equivalently by its dual matrix `v = a⁻¹ u a` (`S ξᵢ⊥ = Σⱼ vᵢⱼ ξⱼ⊥`).
//! Logical Pauli labels `σ` transform as `σ ↦ vᵀ σ mod D` once the code is
//! expressed in its Frobenius basis, which is where all gate extraction
//! happens.

use num_traits::Zero;

use crate::code::{GkpCode, Turn};
use crate::error::{Error, Result};
use crate::exact::{frac, mod_floor, rat_inverse, to_int_vec, Int, IntMatrix, Rat};
use crate::lattice::{DualCoords, GramMatrix};
use crate::normal_form::{frobenius_form, is_gram_preserving, LatticeType};

/// Unimodular action on the dual basis, `M⊥ Sᵀ = V M⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualUnimodular(IntMatrix);

impl DualUnimodular {
    pub fn new(a: &GramMatrix, v: IntMatrix) -> Result<Self> {
        primal_from_dual(a, &v)?;
        Ok(Self(v))
    }

    /// Dual representation of a primal automorphism.
    pub fn from_primal(a: &GramMatrix, u: &IntMatrix) -> Result<Self> {
        if !is_gram_preserving(a, u) {
            return Err(Error::NotAutomorphism);
        }
        Ok(Self(dual_of(a, u)))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

/// `a⁻¹ u a`; integral whenever `u` preserves `a`.
fn dual_of(a: &GramMatrix, u: &IntMatrix) -> IntMatrix {
    a.inverse()
        .matmul(&u.to_rat())
        .matmul(&a.matrix().to_rat())
        .to_int()
        .expect("dual action of an automorphism is integral")
}

/// `u = a v a⁻¹`, the primal basis change of the dual action `v`.
pub fn primal_from_dual(a: &GramMatrix, v: &IntMatrix) -> Result<IntMatrix> {
    if v.rows() != a.dim() || !v.is_square() {
        return Err(Error::DimensionMismatch(
            "dual action has the wrong size".into(),
        ));
    }
    let u = a
        .matrix()
        .to_rat()
        .matmul(&v.to_rat())
        .matmul(a.inverse())
        .to_int()
        .ok_or(Error::NotDualAction)?;
    if !is_gram_preserving(a, &u) {
        return Err(Error::NotDualAction);
    }
    Ok(u)
}

/// Label of a logical Pauli in `L⊥/L ≅ ⊕ (ℤ_{dᵢ})²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    ty: LatticeType,
    s: Vec<Int>,
}

impl PauliLabel {
    /// Reduces component `i` and `n + i` modulo `dᵢ`.
    pub fn new(ty: LatticeType, s: Vec<Int>) -> Result<Self> {
        if s.len() != 2 * ty.n() {
            return Err(Error::DimensionMismatch(format!(
                "label needs {} components, got {}",
                2 * ty.n(),
                s.len()
            )));
        }
        let s = s
            .iter()
            .enumerate()
            .map(|(i, x)| mod_floor(x, ty.modulus(i)))
            .collect();
        Ok(Self { ty, s })
    }

    pub fn zero(ty: LatticeType) -> Self {
        let s = vec![Int::zero(); 2 * ty.n()];
        Self { ty, s }
    }

    pub fn lattice_type(&self) -> &LatticeType {
        &self.ty
    }

    pub fn components(&self) -> &[Int] {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &PauliLabel) -> Result<PauliLabel> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch);
        }
        let s = self.s.iter().zip(&other.s).map(|(a, b)| a + b).collect();
        PauliLabel::new(self.ty.clone(), s)
    }

    /// Point `sᵢ / dᵢ` of the dual torus, in Frobenius-basis dual coordinates.
    pub fn torus_point(&self) -> Vec<Turn> {
        self.s
            .iter()
            .enumerate()
            .map(|(i, x)| Turn::new(Rat::new(x.clone(), self.ty.modulus(i).clone())))
            .collect()
    }
}

/// Logical Clifford gate modulo global phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalClifford {
    vt_mod_d: IntMatrix,
    pauli: PauliLabel,
}

impl LogicalClifford {
    pub fn new(vt: IntMatrix, pauli: PauliLabel) -> Result<Self> {
        let ty = pauli.ty.clone();
        if vt.rows() != 2 * ty.n() || !vt.is_square() {
            return Err(Error::DimensionMismatch(
                "gate matrix has the wrong size".into(),
            ));
        }
        Ok(Self {
            vt_mod_d: reduce_rows(&vt, &ty),
            pauli,
        })
    }

    pub fn identity(ty: LatticeType) -> Self {
        let dim = 2 * ty.n();
        Self {
            vt_mod_d: reduce_rows(&IntMatrix::identity(dim), &ty),
            pauli: PauliLabel::zero(ty),
        }
    }

    pub fn vt_mod_d(&self) -> &IntMatrix {
        &self.vt_mod_d
    }

    pub fn pauli(&self) -> &PauliLabel {
        &self.pauli
    }

    pub fn lattice_type(&self) -> &LatticeType {
        &self.pauli.ty
    }

    /// True when the Clifford part acts trivially on labels.
    pub fn is_pauli(&self) -> bool {
        self.vt_mod_d
            == reduce_rows(
                &IntMatrix::identity(self.vt_mod_d.rows()),
                self.lattice_type(),
            )
    }

    pub fn is_identity(&self) -> bool {
        self.is_pauli() && self.pauli.is_zero()
    }

    /// Gate `next ∘ self` in the Pauli frame: `vᵀ` parts multiply and the
    /// first Pauli part is pushed through the second Clifford part.
    ///
    /// Pauli parts extracted from `η_S` representatives do not compose
    /// homomorphically; the difference is [`sector_cocycle`].
    pub fn then(&self, next: &LogicalClifford) -> Result<LogicalClifford> {
        if self.lattice_type() != next.lattice_type() {
            return Err(Error::TypeMismatch);
        }
        let vt = next.vt_mod_d.matmul(&self.vt_mod_d);
        let pauli = apply_gate(next, &self.pauli)?.add(&next.pauli)?;
        LogicalClifford::new(vt, pauli)
    }

    pub fn with_pauli_shift(&self, shift: &PauliLabel) -> Result<LogicalClifford> {
        Ok(LogicalClifford {
            vt_mod_d: self.vt_mod_d.clone(),
            pauli: self.pauli.add(shift)?,
        })
    }
}

fn reduce_rows(m: &IntMatrix, ty: &LatticeType) -> IntMatrix {
    IntMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        mod_floor(m.get(i, j), ty.modulus(i))
    })
}

/// Corrective shift `η_S` in dual coordinates: the turn differences between
/// the conjugated sector and the original one, each in `[0, 1)`.
pub fn eta_s(code: &GkpCode, u: &IntMatrix) -> Result<DualCoords> {
    let conj = code.conjugate_by_automorphism(u)?;
    Ok(DualCoords(
        conj.sector()
            .iter()
            .zip(code.sector())
            .map(|(after, before)| (after.clone() - before.clone()).value().clone())
            .collect(),
    ))
}

/// Whether `D(η) Ŝ` normalizes the stabilizer, with `η` given by dual
/// coordinates `h` and `S` by its primal matrix `u`.
pub fn in_normalizer(code: &GkpCode, h: &DualCoords, u: &IntMatrix) -> bool {
    if h.0.len() != code.dim() {
        return false;
    }
    match eta_s(code, u) {
        Ok(eta) => h.0.iter().zip(&eta.0).all(|(x, y)| (x - y).is_integer()),
        Err(_) => false,
    }
}

/// Normalizer element `D(η) Ŝ`, with `S` carried by its primal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerElement {
    pub u: IntMatrix,
    pub h: DualCoords,
}

impl NormalizerElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            u: IntMatrix::identity(dim),
            h: DualCoords::zero(dim),
        }
    }

    /// `next · self` as operators: `self` acts first.
    ///
    /// `D(h₂)Ŝ₂ D(h₁)Ŝ₁ = D(h₂ + v₂ᵀh₁) Ŝ₂Ŝ₁` and the primal matrices
    /// compose in application order, `u₁ u₂`.
    pub fn then(&self, a: &GramMatrix, next: &NormalizerElement) -> NormalizerElement {
        let v2t = dual_of(a, &next.u).transpose().to_rat();
        let moved = v2t.mul_vec(&self.h.0);
        NormalizerElement {
            u: self.u.matmul(&next.u),
            h: DualCoords(moved.iter().zip(&next.h.0).map(|(x, y)| x + y).collect()),
        }
    }

    /// `(D(h)Ŝ)⁻¹ = D(−v⁻ᵀh) Ŝ⁻¹`.
    pub fn inverse(&self, a: &GramMatrix) -> NormalizerElement {
        let u_inv = rat_inverse(&self.u)
            .expect("automorphisms are invertible")
            .to_int()
            .expect("unimodular inverse is integral");
        let vt = dual_of(a, &u_inv).transpose().to_rat();
        let h = vt.mul_vec(&self.h.0).into_iter().map(|x| -x).collect();
        NormalizerElement {
            u: u_inv,
            h: DualCoords(h),
        }
    }

    pub fn displacement(h: DualCoords) -> Self {
        let dim = h.0.len();
        Self {
            u: IntMatrix::identity(dim),
            h,
        }
    }

    pub fn automorphism(u: IntMatrix) -> Self {
        let dim = u.rows();
        Self {
            u,
            h: DualCoords::zero(dim),
        }
    }
}

/// Code, automorphism and displacement re-expressed in the Frobenius basis
/// `M' = w M` of the code's lattice.
struct FrobeniusFrame {
    code: GkpCode,
    w: IntMatrix,
    w_inv: IntMatrix,
    ty: LatticeType,
}

impl FrobeniusFrame {
    fn of(a: &GramMatrix, sector: Option<&GkpCode>) -> Result<Self> {
        let f = frobenius_form(a);
        let w_inv = rat_inverse(&f.u)?
            .to_int()
            .expect("unimodular inverse is integral");
        let code = match sector {
            Some(c) => c.rebase(&f.u)?,
            None => GkpCode::trivial_sector(GramMatrix::new(f.u.congruence(a.matrix()))?),
        };
        Ok(Self {
            code,
            w: f.u,
            w_inv,
            ty: f.d,
        })
    }

    fn automorphism(&self, u: &IntMatrix) -> IntMatrix {
        self.w.matmul(u).matmul(&self.w_inv)
    }

    fn dual(&self, h: &DualCoords) -> DualCoords {
        DualCoords(self.w.to_rat().mul_vec(&h.0))
    }
}

pub fn logical_action(code: &GkpCode, h: &DualCoords, u: &IntMatrix) -> Result<LogicalClifford> {
    if !is_gram_preserving(code.gram(), u) || h.0.len() != code.dim() {
        return Err(Error::NotInNormalizer);
    }
    let frame = FrobeniusFrame::of(code.gram(), Some(code))?;
    let u_f = frame.automorphism(u);
    let h_f = frame.dual(h);
    let eta = eta_s(&frame.code, &u_f)?;
    let residual: Vec<Rat> = h_f.0.iter().zip(&eta.0).map(|(x, y)| x - y).collect();
    let residual = to_int_vec(&residual).ok_or(Error::NotInNormalizer)?;
    let vt = dual_of(frame.code.gram(), &u_f).transpose();
    let pauli = PauliLabel::new(frame.ty.clone(), residual)?;
    LogicalClifford::new(vt, pauli)
}

/// Class of a dual-lattice point in `L⊥/L`, labelled in the Frobenius basis.
pub fn pauli_coset(a: &GramMatrix, x: &DualCoords) -> Result<PauliLabel> {
    if x.0.len() != a.dim() {
        return Err(Error::DimensionMismatch(
            "point has the wrong length".into(),
        ));
    }
    let ints = to_int_vec(&x.0).ok_or(Error::NonIntegerPoint)?;
    let frame = FrobeniusFrame::of(a, None)?;
    PauliLabel::new(frame.ty.clone(), frame.w.mul_vec(&ints))
}

pub fn apply_gate(g: &LogicalClifford, s: &PauliLabel) -> Result<PauliLabel> {
    if g.lattice_type() != s.lattice_type() {
        return Err(Error::TypeMismatch);
    }
    PauliLabel::new(s.ty.clone(), g.vt_mod_d.mul_vec(&s.s))
}

/// Twist `ξ ↦ Sξ mod L⊥` of the dual torus; a point with dual coordinates
/// `t` goes to `vᵀ t mod 1`.
pub fn torus_twist(a: &GramMatrix, u: &IntMatrix, t: &[Turn]) -> Result<Vec<Turn>> {
    if !is_gram_preserving(a, u) {
        return Err(Error::NotAutomorphism);
    }
    if t.len() != a.dim() {
        return Err(Error::DimensionMismatch(
            "torus point has the wrong length".into(),
        ));
    }
    let vt = dual_of(a, u).transpose().to_rat();
    let point: Vec<Rat> = t.iter().map(|x| x.value().clone()).collect();
    Ok(vt.mul_vec(&point).into_iter().map(Turn::new).collect())
}

/// Pauli correction between composing the gates of two loops at `code` and
/// extracting the gate of the composite loop.
///
/// With `η` the `[0,1)`-representatives computed in the Frobenius basis, the
/// composite of automorphisms `u₁` then `u₂` satisfies
/// `pauli(g₂∘g₁) = v₂ᵀ p₁ + p₂ + [η₂ + v₂ᵀ η₁ − η₁₂]`; this returns the
/// bracket as a label.
pub fn sector_cocycle(code: &GkpCode, u1: &IntMatrix, u2: &IntMatrix) -> Result<PauliLabel> {
    let frame = FrobeniusFrame::of(code.gram(), Some(code))?;
    let (f1, f2) = (frame.automorphism(u1), frame.automorphism(u2));
    let a_f = frame.code.gram();
    let e1 = eta_s(&frame.code, &f1)?;
    let e2 = eta_s(&frame.code, &f2)?;
    let e12 = eta_s(&frame.code, &f1.matmul(&f2))?;
    let v2t = dual_of(a_f, &f2).transpose().to_rat();
    let pushed = v2t.mul_vec(&e1.0);
    let c: Vec<Rat> = (0..code.dim())
        .map(|i| &e2.0[i] + &pushed[i] - &e12.0[i])
        .collect();
    let c = to_int_vec(&c).expect("η is a crossed homomorphism modulo L⊥");
    PauliLabel::new(frame.ty, c)
}

/// Fractional parts of a rational vector, as turns.
pub fn to_turns(v: &[Rat]) -> Vec<Turn> {
    v.iter().map(|x| Turn::new(frac(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, rat};
    use crate::lattice::symplectic_form;
    use crate::normal_form::standard_gram;

    fn ty(d: &[i64]) -> LatticeType {
        LatticeType::from_i64(d).unwrap()
    }

    fn qutrit() -> GkpCode {
        GkpCode::trivial_sector(standard_gram(&ty(&[3])))
    }

    fn k_primal() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, 0], &[-1, 1]])
    }

    fn half2() -> DualCoords {
        DualCoords(vec![rat(0, 1), rat(1, 2)])
    }

    fn label(t: &[i64], s: &[i64]) -> PauliLabel {
        PauliLabel::new(ty(t), int_vec(s)).unwrap()
    }

    #[test]
    fn primal_from_dual_examples() {
        let a = qutrit().gram().clone();
        let v = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(primal_from_dual(&a, &v).unwrap(), k_primal());
        assert!(primal_from_dual(&a, &IntMatrix::identity(2))
            .unwrap()
            .is_identity());
        let j = GramMatrix::new(symplectic_form(1)).unwrap();
        let jm = symplectic_form(1);
        let jinv = rat_inverse(&jm).unwrap().to_int().unwrap();
        assert_eq!(
            primal_from_dual(&j, &v).unwrap(),
            jm.matmul(&v).matmul(&jinv)
        );
        // a·v·a⁻¹ fractional
        let b = standard_gram(&ty(&[6, 2]));
        let mixed =
            IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 0, 1]]);
        assert_eq!(primal_from_dual(&b, &mixed), Err(Error::NotDualAction));
        assert_eq!(
            DualUnimodular::from_primal(&a, &k_primal())
                .unwrap()
                .matrix(),
            &v
        );
    }

    #[test]
    fn eta_s_examples() {
        let q = qutrit();
        assert_eq!(eta_s(&q, &k_primal()).unwrap(), half2());
        assert_eq!(
            eta_s(&q, &IntMatrix::identity(2)).unwrap(),
            DualCoords::zero(2)
        );
        let even = GkpCode::trivial_sector(standard_gram(&ty(&[2])));
        let u = IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]);
        assert_eq!(eta_s(&even, &u).unwrap(), DualCoords::zero(2));
        assert_eq!(
            eta_s(&q, &IntMatrix::from_i64(&[&[2, 0], &[0, 1]])),
            Err(Error::NotAutomorphism)
        );
    }

    #[test]
    fn normalizer_membership() {
        let q = qutrit();
        assert!(in_normalizer(&q, &half2(), &k_primal()));
        assert!(!in_normalizer(&q, &DualCoords::zero(2), &k_primal()));
        assert!(in_normalizer(
            &q,
            &DualCoords::from_ints(&int_vec(&[1, -2])),
            &IntMatrix::identity(2)
        ));
        assert!(!in_normalizer(
            &q,
            &half2(),
            &IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
        ));
    }

    #[test]
    fn qutrit_s_gate() {
        let g = logical_action(&qutrit(), &half2(), &k_primal()).unwrap();
        assert_eq!(g.vt_mod_d(), &IntMatrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert!(g.pauli().is_zero());
        // X̄ ↦ X̄Z̄, Z̄ ↦ Z̄
        assert_eq!(
            apply_gate(&g, &label(&[3], &[1, 0])).unwrap(),
            label(&[3], &[1, 1])
        );
        assert_eq!(
            apply_gate(&g, &label(&[3], &[0, 1])).unwrap(),
            label(&[3], &[0, 1])
        );
        assert_eq!(
            logical_action(&qutrit(), &DualCoords::zero(2), &k_primal()),
            Err(Error::NotInNormalizer)
        );
    }

    #[test]
    fn two_qutrit_cnot() {
        let code = GkpCode::trivial_sector(standard_gram(&ty(&[3, 3])));
        let vt_paper =
            IntMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 0, 1]]);
        let u = primal_from_dual(code.gram(), &vt_paper.transpose()).unwrap();
        let h = eta_s(&code, &u).unwrap();
        let g = logical_action(&code, &h, &u).unwrap();
        assert_eq!(g.vt_mod_d(), &reduce_rows(&vt_paper, &ty(&[3, 3])));
        assert!(g.pauli().is_zero());
        let t = [3, 3];
        assert_eq!(
            apply_gate(&g, &label(&t, &[1, 0, 0, 0])).unwrap(),
            label(&t, &[1, 1, 0, 0])
        );
        assert_eq!(
            apply_gate(&g, &label(&t, &[0, 0, 0, 1])).unwrap(),
            label(&t, &[0, 0, 2, 1])
        );
    }

    #[test]
    fn identity_and_pauli_gates() {
        let q = qutrit();
        let eta = eta_s(&q, &IntMatrix::identity(2)).unwrap();
        assert!(logical_action(&q, &eta, &IntMatrix::identity(2))
            .unwrap()
            .is_identity());
        let x = DualCoords::from_ints(&int_vec(&[1, 0]));
        let g = logical_action(&q, &x, &IntMatrix::identity(2)).unwrap();
        assert!(g.is_pauli());
        assert_eq!(g.pauli(), &pauli_coset(q.gram(), &x).unwrap());
        assert_eq!(
            apply_gate(&g, &label(&[3], &[2, 1])).unwrap(),
            label(&[3], &[2, 1])
        );
    }

    #[test]
    fn pauli_cosets() {
        let a = qutrit().gram().clone();
        assert!(pauli_coset(&a, &DualCoords::zero(2)).unwrap().is_zero());
        assert_eq!(
            pauli_coset(&a, &DualCoords::from_ints(&int_vec(&[1, 0]))).unwrap(),
            label(&[3], &[1, 0])
        );
        assert!(pauli_coset(&a, &DualCoords::from_ints(&int_vec(&[-3, 0])))
            .unwrap()
            .is_zero());
        assert_eq!(pauli_coset(&a, &half2()), Err(Error::NonIntegerPoint));
    }

    #[test]
    fn gate_type_mismatch() {
        let g = LogicalClifford::identity(ty(&[3]));
        assert_eq!(
            apply_gate(&g, &label(&[2], &[1, 0])),
            Err(Error::TypeMismatch)
        );
        assert_eq!(
            apply_gate(&g, &label(&[3], &[2, 2])).unwrap(),
            label(&[3], &[2, 2])
        );
    }

    #[test]
    fn twist_examples() {
        let a = qutrit().gram().clone();
        let zero = vec![Turn::zero(); 2];
        assert_eq!(torus_twist(&a, &k_primal(), &zero).unwrap(), zero);
        let p = vec![Turn::from_ratio(1, 3), Turn::zero()];
        assert_eq!(
            torus_twist(&a, &k_primal(), &p).unwrap(),
            vec![Turn::from_ratio(1, 3), Turn::from_ratio(1, 3)]
        );
        assert_eq!(torus_twist(&a, &IntMatrix::identity(2), &p).unwrap(), p);
        // consistent with the S gate on the embedded label X̄
        let g = logical_action(&qutrit(), &half2(), &k_primal()).unwrap();
        let s = label(&[3], &[1, 0]);
        assert_eq!(
            torus_twist(&a, &k_primal(), &s.torus_point()).unwrap(),
            apply_gate(&g, &s).unwrap().torus_point()
        );
    }

    /// The `sᵢ/dᵢ` embedding only intertwines the twist with the label
    /// action for scaled types; a cross-mode automorphism of type (2, 1)
    /// already separates the two.
    #[test]
    fn twist_embedding_fails_for_mixed_types() {
        let a = standard_gram(&ty(&[2, 1]));
        let u = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, -2], &[0, 0, 0, 1]]);
        assert!(is_gram_preserving(&a, &u));
        let code = GkpCode::trivial_sector(a.clone());
        let g = logical_action(&code, &eta_s(&code, &u).unwrap(), &u).unwrap();
        let s = label(&[2, 1], &[1, 0, 0, 0]);
        let twisted = torus_twist(&a, &u, &s.torus_point()).unwrap();
        let via_labels = apply_gate(&g, &s).unwrap().torus_point();
        assert_eq!(
            twisted,
            vec![Turn::half(), Turn::half(), Turn::zero(), Turn::zero()]
        );
        assert_eq!(
            via_labels,
            vec![Turn::half(), Turn::zero(), Turn::zero(), Turn::zero()]
        );
    }

    #[test]
    fn dual_commutation_turns() {
        for d in [[2i64].as_slice(), &[3], &[10, 1], &[4, 2]] {
            let t = ty(d);
            let a = standard_gram(&t);
            let n = t.n();
            for i in 0..n {
                let mut x = vec![Int::zero(); 2 * n];
                let mut z = vec![Int::zero(); 2 * n];
                x[i] = Int::from(1);
                z[n + i] = Int::from(1);
                let p = a.dual_symplectic_product(
                    &DualCoords::from_ints(&x),
                    &DualCoords::from_ints(&z),
                );
                assert_eq!(p, Rat::new(Int::from(1), t.entries()[i].clone()));
            }
        }
    }

    #[test]
    fn normalizer_elements_compose_like_conjugations() {
        let q = GkpCode::new(
            standard_gram(&ty(&[3])),
            vec![Turn::from_ratio(1, 4), Turn::from_ratio(2, 3)],
        )
        .unwrap();
        let a = q.gram().clone();
        let first = NormalizerElement {
            u: k_primal(),
            h: DualCoords(vec![rat(1, 5), rat(-2, 7)]),
        };
        let second = NormalizerElement {
            u: IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]),
            h: DualCoords(vec![rat(3, 2), rat(1, 3)]),
        };
        let apply = |c: &GkpCode, e: &NormalizerElement| {
            c.conjugate_by_automorphism(&e.u).unwrap().displace(&e.h)
        };
        let step = apply(&apply(&q, &first), &second);
        let both = first.then(&a, &second);
        assert_eq!(apply(&q, &both), step);
        let id = NormalizerElement::identity(2);
        assert_eq!(both.then(&a, &both.inverse(&a)), id);
        assert_eq!(both.inverse(&a).then(&a, &both), id);
    }
}
