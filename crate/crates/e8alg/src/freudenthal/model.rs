//! The Freudenthal model of e8 over C:
//! e8 = e7 + P + P + C^3 with elements (Phi, P, Q, r, s, t).
//!
//! Frozen basis order (version `freudenthal-basis-v1`):
//!   0..=132   (Phi_k, 0, 0, 0, 0, 0) over the e7 operator basis
//!   133..=188 (0, e_j, 0, 0, 0, 0), P-slot unit vectors
//!   189..=244 (0, 0, e_j, 0, 0, 0)
//!   245, 246, 247  the r, s, t slots
//!
//! The bracket below is not printed in the source text; it is validated
//! internally by machine gates (Jacobi on exact triples, automorphism
//! sweeps, span ranks and fixed dimensions).

use super::e6e7::{
    e7_op, gamma_matrix, l_op, lambda_matrix, symplectic, E7Basis, ModelError, E7DIM, PDIM,
};
use super::jordan::{Jordan, JDIM};
use crate::scalar::{Field, Mat};

pub const FDIM: usize = 248;
pub const BASIS_VERSION: &str = "freudenthal-basis-v1";

#[derive(Clone, PartialEq, Debug)]
pub struct ElF<F> {
    pub phi: Mat<F>, // 56x56 operator, must lie in the e7 span
    pub p: Vec<F>,   // 56
    pub q: Vec<F>,   // 56
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> ElF<F> {
    pub fn zero() -> Self {
        ElF {
            phi: Mat::zero(PDIM, PDIM),
            p: vec![F::zero(); PDIM],
            q: vec![F::zero(); PDIM],
            r: F::zero(),
            s: F::zero(),
            t: F::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phi.is_zero()
            && self.p.iter().all(F::is_zero)
            && self.q.iter().all(F::is_zero)
            && self.r.is_zero()
            && self.s.is_zero()
            && self.t.is_zero()
    }

    pub fn add(&self, o: &ElF<F>) -> ElF<F> {
        ElF {
            phi: self.phi.add(&o.phi),
            p: vec_add(&self.p, &o.p),
            q: vec_add(&self.q, &o.q),
            r: self.r.add(&o.r),
            s: self.s.add(&o.s),
            t: self.t.add(&o.t),
        }
    }

    pub fn sub(&self, o: &ElF<F>) -> ElF<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ElF<F> {
        ElF {
            phi: self.phi.neg(),
            p: self.p.iter().map(F::neg).collect(),
            q: self.q.iter().map(F::neg).collect(),
            r: self.r.neg(),
            s: self.s.neg(),
            t: self.t.neg(),
        }
    }

    pub fn scale(&self, c: &F) -> ElF<F> {
        ElF {
            phi: self.phi.scale(c),
            p: self.p.iter().map(|x| x.mul(c)).collect(),
            q: self.q.iter().map(|x| x.mul(c)).collect(),
            r: self.r.mul(c),
            s: self.s.mul(c),
            t: self.t.mul(c),
        }
    }
}

fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn vec_scale<F: Field>(a: &[F], c: &F) -> Vec<F> {
    a.iter().map(|x| x.mul(c)).collect()
}

fn vec_axpy<F: Field>(acc: &mut [F], c: &F, v: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.mul_add_assign(c, x);
    }
}

/// A v B = [L_A, L_B] + L_{A o B} - (1/3)(A, B) id, an e6 operator.
pub fn vee<F: Field>(a: &Jordan<F>, b: &Jordan<F>) -> Mat<F> {
    if a.is_zero() || b.is_zero() {
        return Mat::zero(JDIM, JDIM);
    }
    let la = l_op(a);
    let lb = l_op(b);
    let mut m = la.commutator(&lb).add(&l_op(&a.jordan_mul(b)));
    let c = a.inner(b).mul(&F::from_ratio(1, 3));
    for k in 0..JDIM {
        *m.at_mut(k, k) = m.at(k, k).sub(&c);
    }
    m
}

fn split_p<F: Field>(p: &[F]) -> (Jordan<F>, Jordan<F>, F, F) {
    let x = Jordan {
        c: p[..JDIM].to_vec(),
    };
    let y = Jordan {
        c: p[JDIM..2 * JDIM].to_vec(),
    };
    (x, y, p[54].clone(), p[55].clone())
}

/// The e7 operator P x Q (symmetric in P and Q).
pub fn p_cross_q<F: Field>(p: &[F], q: &[F]) -> Mat<F> {
    if p.iter().all(F::is_zero) || q.iter().all(F::is_zero) {
        return Mat::zero(PDIM, PDIM);
    }
    let (x, y, xi, eta) = split_p(p);
    let (z, w, zeta, omega) = split_p(q);
    let half_neg = F::from_ratio(-1, 2);
    let phi = vee(&x, &w).add(&vee(&z, &y)).scale(&half_neg);
    let two = F::from_i64(2);
    let a = y
        .cross(&w)
        .scale(&two)
        .sub(&z.scale(&xi))
        .sub(&x.scale(&zeta))
        .scale(&F::from_ratio(-1, 4));
    let b = x
        .cross(&z)
        .scale(&two)
        .sub(&w.scale(&eta))
        .sub(&y.scale(&omega))
        .scale(&F::from_ratio(1, 4));
    let nu = x
        .inner(&w)
        .add(&z.inner(&y))
        .sub(&F::from_i64(3).mul(&xi.mul(&omega).add(&zeta.mul(&eta))))
        .mul(&F::from_ratio(1, 8));
    e7_op(&phi, &a, &b, &nu)
}

/// The e8 bracket on (Phi, P, Q, r, s, t).
pub fn bracket_f<F: Field>(a: &ElF<F>, b: &ElF<F>) -> ElF<F> {
    let phi = a
        .phi
        .commutator(&b.phi)
        .add(&p_cross_q(&a.p, &b.q))
        .sub(&p_cross_q(&b.p, &a.q));

    let mut p = a.phi.mul_vec(&b.p);
    vec_axpy(&mut p, &F::one().neg(), &b.phi.mul_vec(&a.p));
    vec_axpy(&mut p, &a.r, &b.p);
    vec_axpy(&mut p, &b.r.neg(), &a.p);
    vec_axpy(&mut p, &a.s, &b.q);
    vec_axpy(&mut p, &b.s.neg(), &a.q);

    let mut q = a.phi.mul_vec(&b.q);
    vec_axpy(&mut q, &F::one().neg(), &b.phi.mul_vec(&a.q));
    vec_axpy(&mut q, &a.r.neg(), &b.q);
    vec_axpy(&mut q, &b.r, &a.q);
    vec_axpy(&mut q, &a.t, &b.p);
    vec_axpy(&mut q, &b.t.neg(), &a.p);

    let eighth = F::from_ratio(1, 8);
    let quarter = F::from_ratio(1, 4);
    let r = symplectic(&a.p, &b.q)
        .neg()
        .add(&symplectic(&b.p, &a.q))
        .mul(&eighth)
        .add(&a.s.mul(&b.t))
        .sub(&b.s.mul(&a.t));
    let two = F::from_i64(2);
    let s = symplectic(&a.p, &b.p)
        .mul(&quarter)
        .add(&two.mul(&a.r.mul(&b.s)))
        .sub(&two.mul(&b.r.mul(&a.s)));
    let t = symplectic(&a.q, &b.q)
        .mul(&quarter)
        .neg()
        .sub(&two.mul(&a.r.mul(&b.t)))
        .add(&two.mul(&b.r.mul(&a.t)));

    ElF { phi, p, q, r, s, t }
}

/// Bootstrapped model: the e7 operator basis plus the lambda/gamma
/// machinery. Construction runs every convention gate that is cheap; the
/// heavy sweeps live in the verification suites.
pub struct Model<F: Field> {
    pub e7: E7Basis<F>,
    pub lambda: Mat<F>,
    pub gamma: Mat<F>,
    /// lambda * gamma; its square is -id, so its inverse is its negative.
    pub lg: Mat<F>,
}

impl<F: Field> Model<F> {
    pub fn build() -> Result<Self, ModelError> {
        let e7 = E7Basis::build()?;
        let lambda = lambda_matrix::<F>();
        let gamma = gamma_matrix::<F>();
        let lg = lambda.matmul(&gamma);
        if lg.matmul(&lg) != Mat::identity(PDIM).neg() {
            return Err(ModelError::Gate("(lambda gamma)^2 != -id".into()));
        }
        Ok(Model {
            e7,
            lambda,
            gamma,
            lg,
        })
    }

    pub fn basis_element(&self, idx: usize) -> ElF<F> {
        assert!(idx < FDIM);
        let mut el = ElF::zero();
        match idx {
            0..=132 => el.phi = self.e7.ops[idx].clone(),
            133..=188 => el.p[idx - 133] = F::one(),
            189..=244 => el.q[idx - 189] = F::one(),
            245 => el.r = F::one(),
            246 => el.s = F::one(),
            247 => el.t = F::one(),
            _ => unreachable!(),
        }
        el
    }

    /// Coordinates over the frozen 248 basis; None when the Phi component
    /// leaves the e7 span.
    pub fn coords(&self, el: &ElF<F>) -> Option<Vec<F>> {
        let mut c = self.e7.coords(&el.phi)?;
        c.reserve(FDIM - E7DIM);
        c.extend(el.p.iter().cloned());
        c.extend(el.q.iter().cloned());
        c.push(el.r.clone());
        c.push(el.s.clone());
        c.push(el.t.clone());
        Some(c)
    }

    pub fn from_coords(&self, c: &[F]) -> ElF<F> {
        assert_eq!(c.len(), FDIM);
        ElF {
            phi: self.e7.from_coords(&c[..E7DIM]),
            p: c[E7DIM..E7DIM + PDIM].to_vec(),
            q: c[E7DIM + PDIM..E7DIM + 2 * PDIM].to_vec(),
            r: c[245].clone(),
            s: c[246].clone(),
            t: c[247].clone(),
        }
    }

    pub fn upsilon4(&self, el: &ElF<F>) -> ElF<F> {
        let i = F::imag_unit().expect("backend has no imaginary unit");
        ElF {
            phi: el.phi.clone(),
            p: vec_scale(&el.p, &i),
            q: vec_scale(&el.q, &i.neg()),
            r: el.r.clone(),
            s: el.s.neg(),
            t: el.t.neg(),
        }
    }

    pub fn upsilon(&self, el: &ElF<F>) -> ElF<F> {
        ElF {
            phi: el.phi.clone(),
            p: el.p.iter().map(F::neg).collect(),
            q: el.q.iter().map(F::neg).collect(),
            r: el.r.clone(),
            s: el.s.clone(),
            t: el.t.clone(),
        }
    }

    pub fn mu4(&self, el: &ElF<F>) -> ElF<F> {
        let lg_inv = self.lg.neg();
        ElF {
            phi: self.lg.matmul(&el.phi).matmul(&lg_inv),
            p: self.lg.mul_vec(&el.p).iter().map(F::neg).collect(),
            q: self.lg.mul_vec(&el.q).iter().map(F::neg).collect(),
            r: el.r.clone(),
            s: el.s.clone(),
            t: el.t.clone(),
        }
    }

    /// Conjugate-linear involution cutting out the compact real form:
    /// (Phi, P, Q, r, s, t) ->
    /// (lambda conj(Phi) lambda^-1, eps lambda conj(Q),
    ///  -eps lambda conj(P), -conj(r), -conj(t), -conj(s)).
    /// The sign eps (+-1) is fixed by the bracket-automorphism gate; the
    /// opposite relative sign would square to upsilon instead of id.
    pub fn sigma_signed(&self, eps: i64, el: &ElF<F>) -> ElF<F> {
        assert!(eps == 1 || eps == -1);
        let lam = &self.lambda;
        let lam_inv = lam.neg(); // lambda^2 = -id
        let e = F::from_i64(eps);
        let conj_vec = |v: &[F]| -> Vec<F> { v.iter().map(F::conj).collect() };
        ElF {
            phi: lam.matmul(&el.phi.conj_entrywise()).matmul(&lam_inv),
            p: vec_scale(&lam.mul_vec(&conj_vec(&el.q)), &e),
            q: vec_scale(&lam.mul_vec(&conj_vec(&el.p)), &e.neg()),
            r: el.r.conj().neg(),
            s: el.t.conj().neg(),
            t: el.s.conj().neg(),
        }
    }

    /// phi_upsilon(theta): (Phi, theta P, conj(theta) Q, r, theta^2 s,
    /// conj(theta)^2 t) for unit theta.
    pub fn phi_upsilon(&self, theta: &F, el: &ElF<F>) -> ElF<F> {
        assert!(
            theta.mul(&theta.conj()) == F::one(),
            "theta must be a unit"
        );
        let tc = theta.conj();
        ElF {
            phi: el.phi.clone(),
            p: vec_scale(&el.p, theta),
            q: vec_scale(&el.q, &tc),
            r: el.r.clone(),
            s: el.s.mul(&theta.mul(theta)),
            t: el.t.mul(&tc.mul(&tc)),
        }
    }
}
