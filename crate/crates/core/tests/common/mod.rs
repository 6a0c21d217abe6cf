#![allow(dead_code)]

use gkp_core::clifford::eta_s;
use gkp_core::code::{GkpCode, Turn};
use gkp_core::exact::{rat_inverse, Int, IntMatrix, Rat};
use gkp_core::lattice::{DualCoords, GramMatrix};
use gkp_core::normal_form::{is_gram_preserving, standard_gram, LatticeType};
use gkp_core::transport::{frobenius_embedding, Move, PathWord};
use nalgebra::DMatrix;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ty(d: &[i64]) -> LatticeType {
    LatticeType::from_i64(d).unwrap()
}

pub fn inverse(u: &IntMatrix) -> IntMatrix {
    rat_inverse(u).unwrap().to_int().unwrap()
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    let k = rng.gen_range(1..=bound);
    if rng.gen() {
        k
    } else {
        -k
    }
}

/// Word of `len` elementary unimodulars: row additions with multipliers up
/// to `bound`, swaps and sign flips.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize, len: usize, bound: i64) -> IntMatrix {
    let mut u = IntMatrix::identity(dim);
    for _ in 0..len {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        while dim > 1 && j == i {
            j = rng.gen_range(0..dim);
        }
        match rng.gen_range(0..6) {
            0 => u.swap_rows(i, j),
            1 => u.negate_row(i),
            _ if dim > 1 => u.add_row_multiple(i, j, &Int::from(nonzero(rng, bound))),
            _ => u.negate_row(i),
        }
    }
    u
}

/// Type with `n ≤ max_n` modes and entries at most `max_entry`, as a
/// divisibility chain `d₁ ≥ d₂ ≥ …` with each entry a multiple of the next.
pub fn random_type(rng: &mut impl Rng, max_n: usize, max_entry: i64) -> LatticeType {
    let n = rng.gen_range(1..=max_n);
    let mut d = vec![rng.gen_range(1..=max_entry)];
    while d.len() < n {
        let last = *d.last().unwrap();
        let divisors: Vec<i64> = (1..=last).filter(|k| last % k == 0).collect();
        d.push(*divisors.choose(rng).unwrap());
    }
    ty(&d)
}

fn entries(t: &LatticeType) -> Vec<i64> {
    t.entries().iter().map(|x| x.to_i64().unwrap()).collect()
}

/// One random generator of the automorphism group of `J₂ ⊗ D`.
pub fn sp_generator(rng: &mut impl Rng, t: &LatticeType, bound: i64) -> IntMatrix {
    let d = entries(t);
    let n = d.len();
    let mut u = IntMatrix::identity(2 * n);
    let k = nonzero(rng, bound);
    let i = rng.gen_range(0..n);
    let j = rng.gen_range(0..n);
    let (hi, lo) = if d[i] % d[j] == 0 { (i, j) } else { (j, i) };
    match rng.gen_range(0..5) {
        // single-mode shear, either direction, or a Fourier turn
        0 => u.set(i, n + i, Int::from(k)),
        1 => u.set(n + i, i, Int::from(k)),
        2 => {
            u.set(i, i, Int::from(0));
            u.set(n + i, n + i, Int::from(0));
            u.set(i, n + i, Int::from(1));
            u.set(n + i, i, Int::from(-1));
        }
        // symmetric-type block [[I, S], [0, I]] or its transpose
        3 if hi != lo => {
            let (a, b) = (Int::from(k * d[hi] / d[lo]), Int::from(k));
            if rng.gen() {
                u.set(hi, n + lo, a);
                u.set(lo, n + hi, b);
            } else {
                u.set(n + hi, lo, a);
                u.set(n + lo, hi, b);
            }
        }
        // [[X, 0], [0, D X⁻ᵀ D⁻¹]] with X = I + c·E
        4 if i != j => {
            let c = k * d[i] / d[i].gcd(&d[j]);
            u.set(i, j, Int::from(c));
            u.set(n + j, n + i, Int::from(-c * d[j] / d[i]));
        }
        _ => u.set(i, n + i, Int::from(k)),
    }
    assert!(
        is_gram_preserving(&standard_gram(t), &u),
        "generator {:?} for {:?}",
        u,
        d
    );
    u
}

pub fn random_sp(rng: &mut impl Rng, t: &LatticeType, len: usize, bound: i64) -> IntMatrix {
    let mut u = IntMatrix::identity(2 * t.n());
    for _ in 0..len {
        u = u.matmul(&sp_generator(rng, t, bound));
    }
    u
}

/// Gram matrix `a = w⁻¹ (J₂⊗D) w⁻ᵀ` in a random basis, with `w` kept so that
/// automorphisms of the standard form can be carried over.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ty: LatticeType,
    pub gram: GramMatrix,
    pub w: IntMatrix,
    pub w_inv: IntMatrix,
}

impl Presentation {
    pub fn standard(t: &LatticeType) -> Self {
        let dim = 2 * t.n();
        Self {
            ty: t.clone(),
            gram: standard_gram(t),
            w: IntMatrix::identity(dim),
            w_inv: IntMatrix::identity(dim),
        }
    }

    pub fn random(rng: &mut impl Rng, t: &LatticeType, len: usize) -> Self {
        let w = random_unimodular(rng, 2 * t.n(), len, 3);
        let w_inv = inverse(&w);
        let gram = GramMatrix::new(w_inv.congruence(standard_gram(t).matrix())).unwrap();
        Self {
            ty: t.clone(),
            gram,
            w,
            w_inv,
        }
    }

    pub fn automorphism(&self, rng: &mut impl Rng, len: usize) -> IntMatrix {
        let u = random_sp(rng, &self.ty, len, 3);
        let ua = self.w_inv.matmul(&u).matmul(&self.w);
        debug_assert!(is_gram_preserving(&self.gram, &ua));
        ua
    }
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    let q = rng.gen_range(1..=6);
    Rat::new(Int::from(rng.gen_range(-2 * q..=2 * q)), Int::from(q))
}

pub fn random_sector(rng: &mut impl Rng, dim: usize) -> Vec<Turn> {
    (0..dim).map(|_| Turn::new(random_rat(rng))).collect()
}

pub fn random_h(rng: &mut impl Rng, dim: usize) -> DualCoords {
    DualCoords((0..dim).map(|_| random_rat(rng)).collect())
}

/// Flow whose endpoint is the unipotent automorphism `u = I + N`, `N² = 0`,
/// split into `pieces` equal segments.
pub fn unipotent_flow(a: &GramMatrix, u: &IntMatrix, pieces: usize) -> Vec<Move> {
    let m = frobenius_embedding(a).unwrap();
    let m_inv = m.clone().try_inverse().unwrap();
    let dim = a.dim();
    let n = DMatrix::from_fn(dim, dim, |i, j| {
        u.get(i, j).to_f64().unwrap() - if i == j { 1.0 } else { 0.0 }
    });
    let x = (&m_inv * n * &m).transpose();
    (0..pieces)
        .map(|_| Move::Flow {
            x: x.clone(),
            duration: 1.0 / pieces as f64,
        })
        .collect()
}

fn is_square_zero(n: &IntMatrix) -> bool {
    n.matmul(n).entries().all(|x| x == &Int::from(0))
}

/// Random word of automorphisms, displacements and unipotent flows.
pub fn random_word(rng: &mut impl Rng, p: &Presentation, code: &GkpCode, len: usize) -> PathWord {
    let dim = p.gram.dim();
    let mut moves = Vec::new();
    for _ in 0..len {
        match rng.gen_range(0..5) {
            0 | 1 => {
                let len = rng.gen_range(1..=3);
                moves.push(Move::Aut(p.automorphism(rng, len)));
            }
            2 | 3 => moves.push(Move::Displace(random_h(rng, dim))),
            _ => {
                let g = p.w_inv.matmul(&sp_generator(rng, &p.ty, 2)).matmul(&p.w);
                let nil = IntMatrix::from_fn(dim, dim, |i, j| {
                    g.get(i, j) - if i == j { Int::from(1) } else { Int::from(0) }
                });
                // large generators make the float endpoint too ill-conditioned to snap
                let moderate = nil.entries().all(|x| x.magnitude() <= &64u32.into());
                if is_square_zero(&nil) && moderate {
                    moves.extend(unipotent_flow(&p.gram, &g, rng.gen_range(1..=2)));
                } else {
                    moves.push(Move::Aut(g));
                }
            }
        }
    }
    PathWord::new(code.clone(), moves)
}

/// `Aut(u)` followed by the displacement that restores `code`.
pub fn corrected_aut(code: &GkpCode, u: IntMatrix) -> Vec<Move> {
    let eta = eta_s(code, &u).unwrap();
    vec![Move::Aut(u), Move::Displace(eta)]
}
