//! The wedge model of e8 over C: sl(9,C) + Lambda^3(C^9) + Lambda^3(C^9)
//! with the explicit bracket, the Killing and Hermitian forms, the compact
//! real form, the order-four automorphism w4 and the conjugation family
//! phi_w4, plus fixed-subalgebra extraction over the real form.
//!
//! Frozen basis order (version `wedge-basis-v1`):
//!   0..=71    (E_kl, 0, 0), k != l, row-major over k = 1..9, l = 1..9
//!   72..=79   (E_kk - E_99, 0, 0), k = 1..8
//!   80..=163  (0, e_I, 0), I in lexicographic order
//!   164..=247 (0, 0, e_I)
//! Structure-constant exports and all reported indices refer to it.

use crate::exterior::{apply_gl, cross, matrix_unit, Wedge, N};
use crate::scalar::{Field, Mat, Rat};

pub const DIM: usize = 248;
pub const L3: usize = 84;
pub const BASIS_VERSION: &str = "wedge-basis-v1";

/// Element (D, u, v) with D traceless 9x9, u and v of degree 3.
#[derive(Clone, PartialEq, Debug)]
pub struct El<F> {
    pub d: Mat<F>,
    pub u: Wedge<F>,
    pub v: Wedge<F>,
}

impl<F: Field> El<F> {
    pub fn new(d: Mat<F>, u: Wedge<F>, v: Wedge<F>) -> Self {
        assert_eq!((d.rows, d.cols), (N, N));
        assert!(d.trace().is_zero(), "D must be traceless");
        assert_eq!(u.k, 3);
        assert_eq!(v.k, 3);
        El { d, u, v }
    }

    pub fn zero() -> Self {
        El {
            d: Mat::zero(N, N),
            u: Wedge::zero(3),
            v: Wedge::zero(3),
        }
    }

    pub fn from_d(d: Mat<F>) -> Self {
        El::new(d, Wedge::zero(3), Wedge::zero(3))
    }

    pub fn from_u(u: Wedge<F>) -> Self {
        El {
            d: Mat::zero(N, N),
            u,
            v: Wedge::zero(3),
        }
    }

    pub fn from_v(v: Wedge<F>) -> Self {
        El {
            d: Mat::zero(N, N),
            u: Wedge::zero(3),
            v,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, o: &El<F>) -> El<F> {
        El {
            d: self.d.add(&o.d),
            u: self.u.add(&o.u),
            v: self.v.add(&o.v),
        }
    }

    pub fn sub(&self, o: &El<F>) -> El<F> {
        El {
            d: self.d.sub(&o.d),
            u: self.u.sub(&o.u),
            v: self.v.sub(&o.v),
        }
    }

    pub fn neg(&self) -> El<F> {
        El {
            d: self.d.neg(),
            u: self.u.neg(),
            v: self.v.neg(),
        }
    }

    pub fn scale(&self, s: &F) -> El<F> {
        El {
            d: self.d.scale(s),
            u: self.u.scale(s),
            v: self.v.scale(s),
        }
    }
}

/// The 248 basis elements in the frozen order.
pub fn basis_element<F: Field>(idx: usize) -> El<F> {
    assert!(idx < DIM);
    if idx < 72 {
        let (k, l) = offdiag_kl(idx);
        El::from_d(matrix_unit(k, l))
    } else if idx < 80 {
        let k = idx - 72 + 1;
        let mut h = matrix_unit::<F>(k, k);
        *h.at_mut(N - 1, N - 1) = F::one().neg();
        El::from_d(h)
    } else if idx < 80 + L3 {
        El::from_u(Wedge::basis(3, idx - 80))
    } else {
        El::from_v(Wedge::basis(3, idx - 80 - L3))
    }
}

/// Basis index 0..71 -> (k, l), 1-based, k != l, row-major.
fn offdiag_kl(idx: usize) -> (usize, usize) {
    let k = idx / 8 + 1;
    let mut l = idx % 8 + 1;
    if l >= k {
        l += 1;
    }
    (k, l)
}

/// Coordinates over the frozen basis; a closed-form read-off, no solve.
pub fn coords<F: Field>(el: &El<F>) -> Vec<F> {
    let mut c = Vec::with_capacity(DIM);
    for idx in 0..72 {
        let (k, l) = offdiag_kl(idx);
        c.push(el.d.at(k - 1, l - 1).clone());
    }
    for k in 1..N {
        c.push(el.d.at(k - 1, k - 1).clone());
    }
    c.extend(el.u.c.iter().cloned());
    c.extend(el.v.c.iter().cloned());
    c
}

pub fn from_coords<F: Field>(c: &[F]) -> El<F> {
    assert_eq!(c.len(), DIM);
    let mut d = Mat::zero(N, N);
    for idx in 0..72 {
        let (k, l) = offdiag_kl(idx);
        *d.at_mut(k - 1, l - 1) = c[idx].clone();
    }
    let mut last = F::zero();
    for k in 1..N {
        *d.at_mut(k - 1, k - 1) = c[72 + k - 1].clone();
        last = last.sub(&c[72 + k - 1]);
    }
    *d.at_mut(N - 1, N - 1) = last;
    let mut u = Wedge::zero(3);
    u.c.clone_from_slice(&c[80..80 + L3]);
    let mut v = Wedge::zero(3);
    v.c.clone_from_slice(&c[80 + L3..DIM]);
    El { d, u, v }
}

/// The bracket of the wedge model:
/// D = [D1,D2] + u1 x v2 - u2 x v1,
/// u = D1 u2 - D2 u1 + *(v1 ^ v2),
/// v = -tD1 v2 + tD2 v1 - *(u1 ^ u2).
pub fn bracket<F: Field>(a: &El<F>, b: &El<F>) -> El<F> {
    let d = a
        .d
        .commutator(&b.d)
        .add(&cross(&a.u, &b.v))
        .sub(&cross(&b.u, &a.v));
    let u = b
        .u
        .apply_matrix(&a.d)
        .sub(&a.u.apply_matrix(&b.d))
        .add(&a.v.wedge(&b.v).hodge_star());
    let at = a.d.transpose();
    let bt = b.d.transpose();
    let v = a
        .v
        .apply_matrix(&bt)
        .sub(&b.v.apply_matrix(&at))
        .sub(&a.u.wedge(&b.u).hodge_star());
    El { d, u, v }
}

/// Killing form: 60(tr(D1 D2) + (u1, v2) + (u2, v1)).
pub fn killing<F: Field>(a: &El<F>, b: &El<F>) -> F {
    let mut s = a.d.matmul(&b.d).trace();
    s.add_assign(&a.u.inner(&b.v));
    s.add_assign(&b.u.inner(&a.v));
    s.mul(&F::from_i64(60))
}

/// 248x248 matrix of ad(R): column j = coords of [R, basis_j].
pub fn ad_matrix<F: Field>(r: &El<F>) -> Mat<F> {
    let mut m = Mat::zero(DIM, DIM);
    for j in 0..DIM {
        let col = coords(&bracket(r, &basis_element(j)));
        for (i, x) in col.into_iter().enumerate() {
            *m.at_mut(i, j) = x;
        }
    }
    m
}

/// The conjugate-linear involution cutting out the compact real form:
/// (D, u, v) -> (-conj(tD), -conj(v), -conj(u)).
pub fn tau_lambda_tilde<F: Field>(a: &El<F>) -> El<F> {
    El {
        d: a.d.transpose().conj_entrywise().neg(),
        u: a.v.conj().neg(),
        v: a.u.conj().neg(),
    }
}

/// Hermitian inner product <R1, R2> = -B(R1, tau_lambda_tilde R2);
/// positive definite on the whole complex model.
pub fn hermitian<F: Field>(a: &El<F>, b: &El<F>) -> F {
    killing(a, &tau_lambda_tilde(b)).neg()
}

pub fn in_compact_form<F: Field>(a: &El<F>) -> bool {
    tau_lambda_tilde(a) == *a
}

/// A4 = diag(1, i, ..., i).
pub fn a4_matrix<F: Field>() -> Mat<F> {
    let i = F::imag_unit().expect("backend has no imaginary unit");
    let mut m = Mat::zero(N, N);
    *m.at_mut(0, 0) = F::one();
    for k in 1..N {
        *m.at_mut(k, k) = i.clone();
    }
    m
}

/// Conjugation by an invertible 9x9 matrix:
/// (D, u, v) -> (A D A^-1, Au, tA^-1 v), with A acting multiplicatively
/// on degree 3. Instantiated at A4 this is w4.
pub struct PhiW4<F> {
    a: Mat<F>,
    a_inv: Mat<F>,
    a_inv_t: Mat<F>,
}

impl<F: Field> PhiW4<F> {
    pub fn new(a: Mat<F>) -> Option<Self> {
        let a_inv = a.inverse()?;
        let a_inv_t = a_inv.transpose();
        Some(PhiW4 { a, a_inv, a_inv_t })
    }

    pub fn apply(&self, r: &El<F>) -> El<F> {
        El {
            d: self.a.matmul(&r.d).matmul(&self.a_inv),
            u: apply_gl(&r.u, &self.a),
            v: apply_gl(&r.v, &self.a_inv_t),
        }
    }
}

pub fn w4_apply<F: Field>(r: &El<F>) -> El<F> {
    PhiW4::new(a4_matrix()).unwrap().apply(r)
}

/// f(b, B) = diag(b^-8, bB) for b != 0 and B 8x8.
pub fn embed_f<F: Field>(b: &F, bm: &Mat<F>) -> Mat<F> {
    assert_eq!((bm.rows, bm.cols), (8, 8));
    let binv = b.inv().expect("b must be nonzero");
    let mut b8 = F::one();
    for _ in 0..8 {
        b8 = b8.mul(&binv);
    }
    let mut m = Mat::zero(N, N);
    *m.at_mut(0, 0) = b8;
    for r in 0..8 {
        for c in 0..8 {
            *m.at_mut(r + 1, c + 1) = bm.at(r, c).mul(b);
        }
    }
    m
}

/// Sparse structure constants over the frozen basis: entry for pair
/// (i, j), i < j, is the list of (k, c) with [b_i, b_j] = sum c b_k.
pub struct StructureTable<F> {
    pub entries: Vec<Vec<(u32, F)>>,
}

pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    i * (2 * DIM - i - 1) / 2 + (j - i - 1)
}

pub fn structure_table<F: Field>() -> StructureTable<F> {
    let basis: Vec<El<F>> = (0..DIM).map(basis_element).collect();
    let mut entries = Vec::with_capacity(DIM * (DIM - 1) / 2);
    for i in 0..DIM {
        for j in i + 1..DIM {
            let c = coords(&bracket(&basis[i], &basis[j]));
            entries.push(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k as u32, x))
                    .collect(),
            );
        }
    }
    StructureTable { entries }
}

// ---- compact real form ----
//
// Real basis order (version `wedge-basis-v1`, real part):
//   0..=71    for k < l in row-major pair order: (E_kl - E_lk, 0, 0) then
//             (i(E_kl + E_lk), 0, 0)
//   72..=79   (i(E_kk - E_99), 0, 0), k = 1..8
//   80..=247  for each I lex: (0, e_I, -e_I) then (0, i e_I, i e_I)

/// m-th basis element of the compact real form, as a complex element.
pub fn real_basis_element<F: Field>(m: usize) -> El<F> {
    assert!(m < DIM);
    let i = F::imag_unit().expect("backend has no imaginary unit");
    if m < 72 {
        let pair = m / 2;
        let (k, l) = pair_kl(pair);
        let ekl = matrix_unit::<F>(k, l);
        let elk = matrix_unit::<F>(l, k);
        if m % 2 == 0 {
            El::from_d(ekl.sub(&elk))
        } else {
            El::from_d(ekl.add(&elk).scale(&i))
        }
    } else if m < 80 {
        let k = m - 72 + 1;
        let mut h = matrix_unit::<F>(k, k);
        *h.at_mut(N - 1, N - 1) = F::one().neg();
        El::from_d(h.scale(&i))
    } else {
        let pos = (m - 80) / 2;
        let e = Wedge::<F>::basis(3, pos);
        if (m - 80) % 2 == 0 {
            El {
                d: Mat::zero(N, N),
                u: e.clone(),
                v: e.neg(),
            }
        } else {
            El {
                d: Mat::zero(N, N),
                u: e.scale(&i),
                v: e.scale(&i),
            }
        }
    }
}

/// Pair index 0..35 -> (k, l) with 1 <= k < l <= 9, row-major.
fn pair_kl(p: usize) -> (usize, usize) {
    let mut rem = p;
    for k in 1..N {
        let count = N - k;
        if rem < count {
            return (k, k + rem + 1);
        }
        rem -= count;
    }
    unreachable!()
}

/// Real coordinates of a compact-form element over the real basis;
/// None if the element is not tau-lambda-tilde fixed or has coefficients
/// outside Q(i).
pub fn real_coords<F: Field>(el: &El<F>) -> Option<Vec<Rat>> {
    use num_traits::Zero;
    if !in_compact_form(el) {
        return None;
    }
    let mut c = Vec::with_capacity(DIM);
    for p in 0..36 {
        let (k, l) = pair_kl(p);
        let (re, im) = el.d.at(k - 1, l - 1).re_im()?;
        c.push(re);
        c.push(im);
    }
    for k in 1..N {
        let (re, im) = el.d.at(k - 1, k - 1).re_im()?;
        if !Zero::is_zero(&re) {
            return None;
        }
        c.push(im);
    }
    for pos in 0..L3 {
        let (re, im) = el.u.c[pos].re_im()?;
        c.push(re);
        c.push(im);
    }
    Some(c)
}

pub fn from_real_coords<F: Field>(c: &[Rat]) -> El<F> {
    assert_eq!(c.len(), DIM);
    let mut acc = El::zero();
    for (m, x) in c.iter().enumerate() {
        if num_traits::Zero::is_zero(x) {
            continue;
        }
        acc = acc.add(&real_basis_element::<F>(m).scale(&F::from_rat(x)));
    }
    acc
}

/// Rational 248x248 matrix of a real-linear map preserving the compact
/// form, over the real basis.
pub fn real_matrix<F: Field>(map: impl Fn(&El<F>) -> El<F>) -> Mat<Rat> {
    let mut m = Mat::zero(DIM, DIM);
    for j in 0..DIM {
        let img = map(&real_basis_element::<F>(j));
        let col = real_coords(&img)
            .expect("map does not preserve the compact real form (or leaves Q(i))");
        for (i, x) in col.into_iter().enumerate() {
            *m.at_mut(i, j) = x;
        }
    }
    m
}

/// Exact kernel basis of (alpha - id) for a real 248x248 matrix.
pub fn fixed_subalgebra(alpha: &Mat<Rat>) -> Vec<Vec<Rat>> {
    assert_eq!((alpha.rows, alpha.cols), (DIM, DIM));
    alpha.sub(&Mat::identity(DIM)).null_space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::subset_index;
    use crate::scalar::Qi;

    fn e(ix: &[u8]) -> Wedge<Qi> {
        Wedge::basis_subset(ix)
    }

    fn d_h14() -> Mat<Qi> {
        let mut d = matrix_unit(1, 1);
        *d.at_mut(3, 3) = <Qi as Field>::one().neg();
        d
    }

    #[test]
    fn basis_coords_roundtrip() {
        for idx in [0, 7, 8, 71, 72, 79, 80, 120, 163, 164, 200, 247] {
            let b: El<Qi> = basis_element(idx);
            let c = coords(&b);
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1);
            assert_eq!(c[idx], <Qi as Field>::one());
            assert_eq!(from_coords(&c), b);
        }
    }

    #[test]
    fn bracket_examples() {
        // [(E11-E44, 0, 0), (0, e123, 0)] = (0, e123, 0)
        let a = El::from_d(d_h14());
        let b = El::from_u(e(&[1, 2, 3]));
        assert_eq!(bracket(&a, &b), b);
        // [(0, e123, 0), (0, e456, 0)] = (0, 0, -e789)
        let got = bracket(&El::from_u(e(&[1, 2, 3])), &El::from_u(e(&[4, 5, 6])));
        assert_eq!(got, El::from_v(e(&[7, 8, 9])).neg());
        // [(0, e123, 0), (0, 0, e123)] = (e123 x e123, 0, 0)
        let got = bracket(&El::from_u(e(&[1, 2, 3])), &El::from_v(e(&[1, 2, 3])));
        assert_eq!(got, El::from_d(cross(&e(&[1, 2, 3]), &e(&[1, 2, 3]))));
    }

    #[test]
    fn killing_examples() {
        let mut h = matrix_unit::<Qi>(1, 1);
        *h.at_mut(1, 1) = <Qi as Field>::one().neg();
        let r = El::from_d(h);
        assert_eq!(killing(&r, &r), Qi::from_int(120));
        let u = El::from_u(e(&[1, 2, 3]));
        let v = El::from_v(e(&[1, 2, 3]));
        assert_eq!(killing(&u, &v), Qi::from_int(60));
        assert!(killing(&u, &El::from_u(e(&[4, 5, 6]))).is_zero());
    }

    #[test]
    fn ad_matrix_properties() {
        assert!(ad_matrix::<Qi>(&El::zero()).is_zero());
        let r: El<Qi> = basis_element(5).add(&basis_element(100));
        let ad = ad_matrix(&r);
        // ad R applied to R's own coordinates vanishes.
        assert!(ad.mul_vec(&coords(&r)).iter().all(Field::is_zero));
        // Killing = trace form on a spread of pairs including all blocks.
        for (i, j) in [(3, 3), (3, 75), (75, 90), (90, 90), (90, 200), (200, 247), (5, 200)] {
            let a: El<Qi> = basis_element(i);
            let b: El<Qi> = basis_element(j);
            let tr = ad_matrix(&a).matmul(&ad_matrix(&b)).trace();
            assert_eq!(tr, killing(&a, &b), "pair ({i},{j})");
        }
    }

    #[test]
    fn tau_lambda_tilde_examples() {
        let i = Qi::i();
        let mut d: Mat<Qi> = matrix_unit(1, 1);
        *d.at_mut(1, 1) = <Qi as Field>::one().neg();
        let r = El::from_d(d.scale(&i));
        assert_eq!(tau_lambda_tilde(&r), r);
        assert!(in_compact_form(&r));
        let got = tau_lambda_tilde(&El::from_u(e(&[1, 2, 3])));
        assert_eq!(got, El::from_v(e(&[1, 2, 3])).neg());
        for idx in 0..DIM {
            let b: El<Qi> = basis_element(idx);
            assert_eq!(tau_lambda_tilde(&tau_lambda_tilde(&b)), b);
        }
    }

    #[test]
    fn hermitian_examples() {
        let u = El::from_u(e(&[1, 2, 3]));
        assert_eq!(hermitian(&u, &u), Qi::from_int(60));
        let r = El::from_d(matrix_unit::<Qi>(1, 2));
        assert_eq!(hermitian(&r, &r), Qi::from_int(60));
        assert!(!in_compact_form(&r));
        // Hermitian symmetry and positivity on a mixed element.
        let x = u.add(&r.scale(&Qi::i()));
        let y = El::from_v(e(&[4, 5, 6])).add(&u);
        assert_eq!(hermitian(&x, &y), hermitian(&y, &x).conj());
        let (re, im) = hermitian(&x, &x).re_im().unwrap();
        assert!(re > crate::scalar::rat(0) && num_traits::Zero::is_zero(&im));
    }

    #[test]
    fn w4_examples() {
        let r = El::from_d(matrix_unit::<Qi>(1, 2));
        assert_eq!(w4_apply(&r), r.scale(&Qi::i().neg()));
        let u = El::from_u(e(&[1, 2, 3]));
        assert_eq!(w4_apply(&u), u.neg());
        let mut order2 = true;
        for idx in 0..DIM {
            let b: El<Qi> = basis_element(idx);
            let b2 = w4_apply(&w4_apply(&b));
            if b2 != b {
                order2 = false;
            }
            assert_eq!(w4_apply(&w4_apply(&b2)), b, "w4^4 != id at {idx}");
        }
        assert!(!order2, "w4 has order 2, expected 4");
    }

    #[test]
    fn phi_w4_examples() {
        let id = PhiW4::<Qi>::new(Mat::identity(9)).unwrap();
        let w4 = PhiW4::<Qi>::new(a4_matrix()).unwrap();
        for idx in [0, 40, 72, 80, 150, 200] {
            let b: El<Qi> = basis_element(idx);
            assert_eq!(id.apply(&b), b);
            assert_eq!(w4.apply(&b), w4_apply(&b));
        }
        assert!(PhiW4::<Qi>::new(Mat::zero(9, 9)).is_none());
    }

    #[test]
    fn embed_f_examples() {
        let f = embed_f(&<Qi as Field>::one(), &Mat::identity(8));
        assert_eq!(f, Mat::identity(9));
        let b = Qi::i();
        let f = embed_f(&b, &Mat::identity(8).scale(&Qi::from_int(2)));
        assert_eq!(*f.at(0, 0), <Qi as Field>::one()); // i^-8 = 1
        assert_eq!(*f.at(1, 1), Qi::i().mul(&Qi::from_int(2)));
    }

    #[test]
    fn real_basis_roundtrip() {
        for m in 0..DIM {
            let b: El<Qi> = real_basis_element(m);
            assert!(in_compact_form(&b), "real basis {m} not compact");
            let c = real_coords(&b).unwrap();
            assert_eq!(c.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count(), 1);
            assert_eq!(from_real_coords::<Qi>(&c), b);
        }
        assert!(real_coords(&El::from_d(matrix_unit::<Qi>(1, 2))).is_none());
    }

    #[test]
    fn fixed_subalgebra_identity() {
        let alpha: Mat<Rat> = Mat::identity(DIM);
        assert_eq!(fixed_subalgebra(&alpha).len(), DIM);
    }

    #[test]
    fn structure_constants_spot_check() {
        // [b_i, b_j] with b_i = (E11-E44,0,0): build that element instead
        // from single units: E11-E44 = H1 - H4 in the frozen diagonal basis.
        let i = 72; // H1 = E11 - E99
        let j = 80 + subset_index(&[1, 2, 3]); // (0, e123, 0)
        let t: StructureTable<Qi> = StructureTable {
            entries: vec![coords(&bracket(
                &basis_element::<Qi>(i),
                &basis_element(j),
            ))
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k as u32, x))
            .collect()],
        };
        assert_eq!(t.entries[0], vec![(j as u32, <Qi as Field>::one())]);
    }
}
