//! Exterior algebra over C^9: the spaces Lambda^k(C^9) with their
//! orthonormal subset basis, the wedge product, the symmetric bilinear
//! inner product, the Hodge star, the sl(9) derivation action and the
//! traceless cross product u x v on degree 3.
//!
//! Basis convention: e_I for strictly increasing k-subsets I of {1..9},
//! ordered lexicographically on the index sequences. Signs are always
//! computed from inversion counts, never from hand-written tables.

use once_cell::sync::Lazy;

use crate::scalar::{Field, Mat};

pub const N: usize = 9;

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Per degree k: the subset masks (bit i-1 set means index i is present)
/// in lexicographic order of the increasing index sequences, plus the
/// inverse lookup mask -> position.
struct DegreeTable {
    masks: Vec<u16>,
    index_of: Vec<usize>, // length 512, usize::MAX when size mismatch
}

static TABLES: Lazy<Vec<DegreeTable>> = Lazy::new(|| {
    (0..=N)
        .map(|k| {
            let mut subsets: Vec<Vec<u8>> = Vec::new();
            let mut cur: Vec<u8> = Vec::new();
            gen_subsets(1, k, &mut cur, &mut subsets);
            let masks: Vec<u16> = subsets
                .iter()
                .map(|s| s.iter().fold(0u16, |m, &i| m | (1 << (i - 1))))
                .collect();
            let mut index_of = vec![usize::MAX; 1 << N];
            for (pos, &m) in masks.iter().enumerate() {
                index_of[m as usize] = pos;
            }
            DegreeTable { masks, index_of }
        })
        .collect()
});

fn gen_subsets(start: u8, remaining: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..=(N as u8 - remaining as u8 + 1) {
        cur.push(i);
        gen_subsets(i + 1, remaining - 1, cur, out);
        cur.pop();
    }
}

/// Lexicographic position of a strictly increasing subset of {1..9}.
pub fn subset_index(indices: &[u8]) -> usize {
    assert!(
        indices.windows(2).all(|w| w[0] < w[1])
            && indices.iter().all(|&i| (1..=N as u8).contains(&i)),
        "subset must be strictly increasing within 1..=9: {indices:?}"
    );
    let mask = indices.iter().fold(0u16, |m, &i| m | (1 << (i - 1)));
    let pos = TABLES[indices.len()].index_of[mask as usize];
    debug_assert_ne!(pos, usize::MAX);
    pos
}

/// Inverse of [`subset_index`].
pub fn index_subset(k: usize, pos: usize) -> Vec<u8> {
    mask_to_indices(TABLES[k].masks[pos])
}

fn mask_to_indices(mask: u16) -> Vec<u8> {
    (1..=N as u8).filter(|&i| mask & (1 << (i - 1)) != 0).collect()
}

/// Sign (-1)^t of concatenating disjoint sorted lists (A, B), with t the
/// number of pairs a in A, b in B with a > b.
fn merge_sign_masks(a: u16, b: u16) -> i32 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    for i in 0..N {
        if b & (1 << i) != 0 {
            inversions += (a >> (i + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of Lambda^k(C^9): degree plus C(9,k) coefficients over the
/// lexicographic subset basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Wedge<F> {
    pub k: usize,
    pub c: Vec<F>,
}

impl<F: Field> Wedge<F> {
    pub fn zero(k: usize) -> Self {
        Wedge {
            k,
            c: vec![F::zero(); binom(N, k)],
        }
    }

    pub fn basis(k: usize, pos: usize) -> Self {
        let mut w = Wedge::zero(k);
        w.c[pos] = F::one();
        w
    }

    /// e_{i1} ^ ... ^ e_{ik} for strictly increasing indices.
    pub fn basis_subset(indices: &[u8]) -> Self {
        Wedge::basis(indices.len(), subset_index(indices))
    }

    pub fn dim(k: usize) -> usize {
        binom(N, k)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(F::is_zero)
    }

    pub fn add(&self, o: &Wedge<F>) -> Wedge<F> {
        assert_eq!(self.k, o.k);
        Wedge {
            k: self.k,
            c: self.c.iter().zip(&o.c).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, o: &Wedge<F>) -> Wedge<F> {
        assert_eq!(self.k, o.k);
        Wedge {
            k: self.k,
            c: self.c.iter().zip(&o.c).map(|(x, y)| x.sub(y)).collect(),
        }
    }

    pub fn neg(&self) -> Wedge<F> {
        Wedge {
            k: self.k,
            c: self.c.iter().map(F::neg).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Wedge<F> {
        Wedge {
            k: self.k,
            c: self.c.iter().map(|x| x.mul(s)).collect(),
        }
    }

    pub fn conj(&self) -> Wedge<F> {
        Wedge {
            k: self.k,
            c: self.c.iter().map(F::conj).collect(),
        }
    }

    /// Wedge product; graded-anticommutative, zero on repeated indices.
    pub fn wedge(&self, o: &Wedge<F>) -> Wedge<F> {
        let k = self.k + o.k;
        assert!(k <= N, "degree overflow: {} + {}", self.k, o.k);
        let ta = &TABLES[self.k];
        let tb = &TABLES[o.k];
        let tout = &TABLES[k];
        let mut out: Wedge<F> = Wedge::zero(k);
        for (ia, ca) in self.c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = ta.masks[ia];
            for (ib, cb) in o.c.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = tb.masks[ib];
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign_masks(ma, mb);
                let pos = tout.index_of[(ma | mb) as usize];
                let term = ca.mul(cb);
                let term = if sign < 0 { term.neg() } else { term };
                out.c[pos].add_assign(&term);
            }
        }
        out
    }

    /// Symmetric bilinear inner product (not Hermitian); e_I orthonormal.
    pub fn inner(&self, o: &Wedge<F>) -> F {
        assert_eq!(self.k, o.k, "inner product needs equal degrees");
        let mut acc = F::zero();
        for (x, y) in self.c.iter().zip(&o.c) {
            acc.mul_add_assign(x, y);
        }
        acc
    }

    /// Hodge star: (*u, v) = (u ^ v, e_1 ^ ... ^ e_9). On basis elements
    /// *e_I = sign(I, I^c) e_{I^c}.
    pub fn hodge_star(&self) -> Wedge<F> {
        let kc = N - self.k;
        let tin = &TABLES[self.k];
        let tout = &TABLES[kc];
        let full: u16 = (1 << N) - 1;
        let mut out = Wedge::zero(kc);
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = tin.masks[i];
            let mc = full & !m;
            let sign = merge_sign_masks(m, mc);
            let pos = tout.index_of[mc as usize];
            out.c[pos] = if sign < 0 { c.neg() } else { c.clone() };
        }
        out
    }

    /// Derivation action of a 9x9 matrix: D(e_{i1}^...^e_{ik}) =
    /// sum_p e_{i1}^...^(D e_{ip})^...^e_{ik}.
    pub fn apply_matrix(&self, d: &Mat<F>) -> Wedge<F> {
        assert_eq!((d.rows, d.cols), (N, N));
        let t = &TABLES[self.k];
        let mut out: Wedge<F> = Wedge::zero(self.k);
        for (pos, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = t.masks[pos];
            for i in 1..=N as u8 {
                if m & (1 << (i - 1)) == 0 {
                    continue;
                }
                // Replace e_i by D e_i = sum_r D[r-1][i-1] e_r.
                let rest = m & !(1 << (i - 1));
                for r in 1..=N as u8 {
                    let coeff = d.at(r as usize - 1, i as usize - 1);
                    if coeff.is_zero() || rest & (1 << (r - 1)) != 0 {
                        continue;
                    }
                    // Moving e_r into e_i's slot then resorting crosses the
                    // elements of `rest` strictly between i and r.
                    let (lo, hi) = if i < r { (i, r) } else { (r, i) };
                    let between_mask = ((1u16 << (hi - 1)) - 1) & !((1 << lo) - 1);
                    let swaps = (rest & between_mask).count_ones();
                    let npos = t.index_of[(rest | (1 << (r - 1))) as usize];
                    let term = c.mul(coeff);
                    let term = if swaps % 2 == 1 { term.neg() } else { term };
                    out.c[npos].add_assign(&term);
                }
            }
        }
        out
    }
}

/// Multiplicative action of an invertible matrix on Lambda^k:
/// A(u1 ^ ... ^ uk) = Au1 ^ ... ^ Auk (not the derivation action).
pub fn apply_gl<F: Field>(w: &Wedge<F>, a: &Mat<F>) -> Wedge<F> {
    assert_eq!((a.rows, a.cols), (N, N));
    let mut out: Wedge<F> = Wedge::zero(w.k);
    for (pos, c) in w.c.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut acc: Wedge<F> = Wedge::basis(0, 0);
        for i in index_subset(w.k, pos) {
            let mut col: Wedge<F> = Wedge::zero(1);
            for r in 0..N {
                col.c[r] = a.at(r, i as usize - 1).clone();
            }
            acc = acc.wedge(&col);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Traceless cross product of two degree-3 elements:
/// (u x v) x = *(v ^ *(u ^ x)) + (2/3)(u, v) x, returned as the 9x9
/// matrix with column j = (u x v) e_j.
pub fn cross<F: Field>(u: &Wedge<F>, v: &Wedge<F>) -> Mat<F> {
    assert_eq!(u.k, 3);
    assert_eq!(v.k, 3);
    let uv = u.inner(v).mul(&F::from_ratio(2, 3));
    let mut m = Mat::zero(N, N);
    for j in 0..N {
        let ej = Wedge::basis(1, j);
        let col = v.wedge(&u.wedge(&ej).hodge_star()).hodge_star();
        for r in 0..N {
            let mut entry = col.c[r].clone();
            if r == j {
                entry.add_assign(&uv);
            }
            *m.at_mut(r, j) = entry;
        }
    }
    m
}

/// E_{kl}: single 1 in row k, column l (1-based).
pub fn matrix_unit<F: Field>(k: usize, l: usize) -> Mat<F> {
    let mut m = Mat::zero(N, N);
    *m.at_mut(k - 1, l - 1) = F::one();
    m
}

/// The 80 elementary traceless generators of sl(9): E_{kl} for k != l in
/// row-major order, then H_k = E_{kk} - E_{99} for k = 1..8.
pub fn sl9_generators<F: Field>() -> Vec<Mat<F>> {
    let mut gens = Vec::with_capacity(80);
    for k in 1..=N {
        for l in 1..=N {
            if k != l {
                gens.push(matrix_unit(k, l));
            }
        }
    }
    for k in 1..N {
        let mut h = matrix_unit::<F>(k, k);
        *h.at_mut(N - 1, N - 1) = F::one().neg();
        gens.push(h);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;

    type W = Wedge<Qi>;

    fn e(indices: &[u8]) -> W {
        Wedge::basis_subset(indices)
    }

    /// Independent sign oracle: naive inversion count on the concatenated
    /// index sequence.
    fn naive_sign(seq: &[u8]) -> i32 {
        let mut inv = 0;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn subset_index_examples() {
        assert_eq!(subset_index(&[1, 2, 3]), 0);
        assert_eq!(subset_index(&[1, 2, 4]), 1);
        assert_eq!(subset_index(&[7, 8, 9]), 83);
        assert_eq!(binom(9, 3), 84);
        for pos in 0..84 {
            assert_eq!(subset_index(&index_subset(3, pos)), pos);
        }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(&[1, 2, 3]).wedge(&e(&[4, 5, 6])), e(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(e(&[1, 2, 4]).wedge(&e(&[3])), e(&[1, 2, 3, 4]).neg());
        assert!(e(&[1, 2, 3]).wedge(&e(&[1, 4, 5])).is_zero());
    }

    #[test]
    fn wedge_signs_match_naive_oracle() {
        for ia in 0..binom(9, 2) {
            for ib in 0..binom(9, 3) {
                let a = index_subset(2, ia);
                let b = index_subset(3, ib);
                let prod = e(&a).wedge(&e(&b));
                let mut seq = a.clone();
                seq.extend_from_slice(&b);
                let mut sorted = seq.clone();
                sorted.sort();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    assert!(prod.is_zero());
                } else {
                    let expect = if naive_sign(&seq) < 0 {
                        e(&sorted).neg()
                    } else {
                        e(&sorted)
                    };
                    assert_eq!(prod, expect, "{a:?} ^ {b:?}");
                }
            }
        }
    }

    #[test]
    fn graded_anticommutativity() {
        for (ka, kb) in [(1, 1), (1, 2), (2, 3), (3, 3), (4, 5)] {
            for ia in 0..binom(9, ka) {
                for ib in 0..binom(9, kb) {
                    let a: W = Wedge::basis(ka, ia);
                    let b: W = Wedge::basis(kb, ib);
                    let lhs = a.wedge(&b);
                    let rhs = b.wedge(&a);
                    let rhs = if (ka * kb) % 2 == 1 { rhs.neg() } else { rhs };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inner_examples() {
        let one = <Qi as Field>::one();
        assert_eq!(e(&[1, 2, 3]).inner(&e(&[1, 2, 3])), one);
        assert!(e(&[1, 2, 3]).inner(&e(&[1, 2, 4])).is_zero());
        let u = e(&[1]).add(&e(&[4])).wedge(&e(&[2])).wedge(&e(&[3]));
        assert_eq!(u.inner(&e(&[1, 2, 3])), one);
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(e(&[1, 2, 3]).hodge_star(), e(&[4, 5, 6, 7, 8, 9]));
        let one: W = Wedge::basis(0, 0);
        assert_eq!(one.hodge_star(), e(&[1, 2, 3, 4, 5, 6, 7, 8, 9]));
        // Star is the bilinear adjoint it claims to be: (*u, v) = (u^v, vol).
        let vol = e(&[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        for i in 0..binom(9, 4) {
            let u: W = Wedge::basis(4, i);
            let su = u.hodge_star();
            for j in 0..binom(9, 5) {
                let v: W = Wedge::basis(5, j);
                assert_eq!(su.inner(&v), u.wedge(&v).inner(&vol));
            }
        }
    }

    #[test]
    fn star_involution_on_deg3() {
        for i in 0..84 {
            let u: W = Wedge::basis(3, i);
            assert_eq!(u.hodge_star().hodge_star(), u);
        }
    }

    #[test]
    fn sl9_action_examples() {
        let mut d: Mat<Qi> = matrix_unit(1, 1);
        *d.at_mut(3, 3) = <Qi as Field>::one().neg(); // E11 - E44
        assert_eq!(e(&[1, 2, 3]).apply_matrix(&d), e(&[1, 2, 3]));
        assert_eq!(e(&[4, 5, 6]).apply_matrix(&d), e(&[4, 5, 6]).neg());
        // Diagonal H acts on e_I by the sum of its I-entries.
        let mut h: Mat<Qi> = Mat::zero(9, 9);
        for k in 0..9 {
            *h.at_mut(k, k) = Qi::from_int(k as i64 + 1);
        }
        let got = e(&[2, 5, 9]).apply_matrix(&h);
        assert_eq!(got, e(&[2, 5, 9]).scale(&Qi::from_int(2 + 5 + 9)));
    }

    #[test]
    fn sl9_action_is_leibniz() {
        let d: Mat<Qi> = matrix_unit(2, 7);
        for ia in 0..9 {
            for ib in 0..binom(9, 2) {
                let a: W = Wedge::basis(1, ia);
                let b: W = Wedge::basis(2, ib);
                let lhs = a.wedge(&b).apply_matrix(&d);
                let rhs = a.apply_matrix(&d).wedge(&b).add(&a.wedge(&b.apply_matrix(&d)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cross_diagonal_example() {
        let m = cross(&e(&[1, 2, 3]), &e(&[1, 2, 3]));
        for r in 0..9 {
            for c in 0..9 {
                let expect = if r != c {
                    <Qi as Field>::zero()
                } else if r < 3 {
                    Qi::from_ratio(2, 3)
                } else {
                    Qi::from_ratio(-1, 3)
                };
                assert_eq!(*m.at(r, c), expect, "({r},{c})");
            }
        }
        assert!(m.trace().is_zero());
    }

    #[test]
    fn cross_transpose_symmetry() {
        // t(u x v) = v x u on a spread of basis pairs.
        for (i, j) in [(0, 0), (0, 83), (5, 17), (40, 41), (83, 2)] {
            let u: W = Wedge::basis(3, i);
            let v: W = Wedge::basis(3, j);
            assert_eq!(cross(&u, &v).transpose(), cross(&v, &u));
        }
    }

    #[test]
    fn cross_trace_zero_exhaustive() {
        for i in 0..84 {
            let u: W = Wedge::basis(3, i);
            for j in 0..84 {
                let v: W = Wedge::basis(3, j);
                assert!(cross(&u, &v).trace().is_zero(), "tr(e_{i} x e_{j}) != 0");
            }
        }
    }

    #[test]
    fn sl9_generator_count() {
        let gens: Vec<Mat<Qi>> = sl9_generators();
        assert_eq!(gens.len(), 80);
        for g in &gens {
            assert!(g.trace().is_zero());
        }
    }
}
