//! Operator-level construction of e6 and e7 over C.
//!
//! e6 acts on the 27-dim Jordan algebra; it is spanned by 52 derivations
//! [L_A, L_B] (the f4 part) and 26 multiplications L_T by traceless T.
//! e7 acts on the 56-dim space P = J + J + C + C via
//!   Phi(phi,A,B,nu)(X,Y,xi,eta) =
//!     (phi X - (nu/3) X + 2 B x Y + eta A,
//!      2 A x X - tphi Y + (nu/3) Y + xi B,
//!      (A, Y) + nu xi,
//!      (B, X) - nu eta)
//! with tphi the transpose with respect to (,) on J.
//!
//! Frozen coordinate orders:
//!   P-space: X over the 27 Jordan basis, then Y (27), then xi, eta.
//!   e6 basis: 52 selected [L_i, L_j] derivations (in row-major (i,j)
//!   insertion order), then L_T for T = E1-E3, E2-E3, F_i(e_a).
//!   e7 basis: 78 e6 ops, then 27 A-slots, 27 B-slots, then nu.
//!
//! Every span dimension is an exact machine gate: 52, 78, 133. A failure
//! means a convention error and aborts the bootstrap.

use super::jordan::{Jordan, JDIM};
use crate::scalar::{sparse_from_dense, Field, Mat, SparseSolver};
use thiserror::Error;

pub const PDIM: usize = 56;
pub const E6DIM: usize = 78;
pub const E7DIM: usize = 133;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("convention gate failed: {0}")]
    Gate(String),
}

/// Jordan multiplication operator L_A as a 27x27 matrix.
pub fn l_op<F: Field>(a: &Jordan<F>) -> Mat<F> {
    let mut m = Mat::zero(JDIM, JDIM);
    if a.is_zero() {
        return m;
    }
    for j in 0..JDIM {
        let col = a.jordan_mul(&Jordan::basis(j));
        for i in 0..JDIM {
            if !col.c[i].is_zero() {
                *m.at_mut(i, j) = col.c[i].clone();
            }
        }
    }
    m
}

/// Transpose with respect to (,): tphi = G^-1 phi^T G with
/// G = diag(1,1,1, 2 x 24).
pub fn transpose_j<F: Field>(phi: &Mat<F>) -> Mat<F> {
    let g = |k: usize| -> i64 {
        if k < 3 {
            1
        } else {
            2
        }
    };
    Mat::from_fn(JDIM, JDIM, |i, j| {
        // (G^-1 phi^T G)[i][j] = phi[j][i] * g(j) / g(i)
        let x = phi.at(j, i).clone();
        if x.is_zero() {
            return x;
        }
        match (g(i), g(j)) {
            (1, 2) => x.mul(&F::from_i64(2)),
            (2, 1) => x.mul(&F::from_ratio(1, 2)),
            _ => x,
        }
    })
}

pub struct E6Basis<F> {
    /// 78 operators on J; first 52 derivations, then 26 L_T.
    pub ops: Vec<Mat<F>>,
    pub f4_rank: usize,
}

/// The 26 traceless generators T: E1-E3, E2-E3, then the F_i(e_a) basis.
fn traceless_jordan<F: Field>() -> Vec<Jordan<F>> {
    let mut out = Vec::with_capacity(26);
    for k in 0..2 {
        let mut t = Jordan::basis(k);
        t.c[2] = F::one().neg();
        out.push(t);
    }
    for j in 3..JDIM {
        out.push(Jordan::basis(j));
    }
    out
}

pub fn build_e6<F: Field>() -> Result<E6Basis<F>, ModelError> {
    let l: Vec<Mat<F>> = (0..JDIM).map(|j| l_op(&Jordan::basis(j))).collect();
    let mut solver: SparseSolver<F> = SparseSolver::new(JDIM * JDIM);
    let mut ders: Vec<Mat<F>> = Vec::new();
    for i in 0..JDIM {
        for j in i + 1..JDIM {
            let c = l[i].commutator(&l[j]);
            if solver.insert(sparse_from_dense(&c.a)) {
                ders.push(c);
            }
        }
    }
    let f4_rank = solver.rank();
    if f4_rank != 52 {
        return Err(ModelError::Gate(format!(
            "derivation span rank {f4_rank}, expected 52"
        )));
    }
    let mut ops = ders;
    for t in traceless_jordan::<F>() {
        let m = l_op(&t);
        if !solver.insert(sparse_from_dense(&m.a)) {
            return Err(ModelError::Gate(
                "L_T dependent on derivation span".into(),
            ));
        }
        ops.push(m);
    }
    if solver.rank() != E6DIM {
        return Err(ModelError::Gate(format!(
            "e6 span rank {}, expected {E6DIM}",
            solver.rank()
        )));
    }
    Ok(E6Basis { ops, f4_rank })
}

/// The 56x56 matrix of Phi(phi, A, B, nu).
pub fn e7_op<F: Field>(phi: &Mat<F>, a: &Jordan<F>, b: &Jordan<F>, nu: &F) -> Mat<F> {
    let mut m = Mat::zero(PDIM, PDIM);
    let third = F::from_ratio(1, 3);
    let nu3 = nu.mul(&third);
    let tphi = transpose_j(phi);
    let two = F::from_i64(2);
    for j in 0..JDIM {
        let xj = Jordan::basis(j);
        // Column for X_j: X' = phi X - (nu/3) X; Y' = 2 A x X; eta' = (B, X).
        for i in 0..JDIM {
            let mut v = phi.at(i, j).clone();
            if i == j {
                v = v.sub(&nu3);
            }
            if !v.is_zero() {
                *m.at_mut(i, j) = v;
            }
        }
        if !a.is_zero() {
            let ax = a.cross(&xj).scale(&two);
            for i in 0..JDIM {
                if !ax.c[i].is_zero() {
                    *m.at_mut(JDIM + i, j) = ax.c[i].clone();
                }
            }
        }
        if !b.is_zero() {
            let bx = b.inner(&xj);
            if !bx.is_zero() {
                *m.at_mut(55, j) = bx;
            }
            let by = b.cross(&xj).scale(&two);
            for i in 0..JDIM {
                if !by.c[i].is_zero() {
                    *m.at_mut(i, JDIM + j) = by.c[i].clone();
                }
            }
        }
        // Column for Y_j: X' = 2 B x Y; Y' = -tphi Y + (nu/3) Y; xi' = (A, Y).
        for i in 0..JDIM {
            let mut v = tphi.at(i, j).neg();
            if i == j {
                v = v.add(&nu3);
            }
            if !v.is_zero() {
                *m.at_mut(JDIM + i, JDIM + j) = v;
            }
        }
        if !a.is_zero() {
            let ay = a.inner(&xj);
            if !ay.is_zero() {
                *m.at_mut(54, JDIM + j) = ay;
            }
        }
    }
    // Column for xi: Y' = B; xi' = nu.
    for i in 0..JDIM {
        if !b.c[i].is_zero() {
            *m.at_mut(JDIM + i, 54) = b.c[i].clone();
        }
    }
    *m.at_mut(54, 54) = nu.clone();
    // Column for eta: X' = A; eta' = -nu.
    for i in 0..JDIM {
        if !a.c[i].is_zero() {
            *m.at_mut(i, 55) = a.c[i].clone();
        }
    }
    *m.at_mut(55, 55) = nu.neg();
    m
}

pub struct E7Basis<F: Field> {
    pub e6: E6Basis<F>,
    /// 133 operators on P in the frozen order.
    pub ops: Vec<Mat<F>>,
    solver: SparseSolver<F>,
}

impl<F: Field> E7Basis<F> {
    pub fn build() -> Result<Self, ModelError> {
        let e6 = build_e6::<F>()?;
        let zero_j: Jordan<F> = Jordan::zero();
        let mut ops = Vec::with_capacity(E7DIM);
        for phi in &e6.ops {
            ops.push(e7_op(phi, &zero_j, &zero_j, &F::zero()));
        }
        let zero_phi: Mat<F> = Mat::zero(JDIM, JDIM);
        for j in 0..JDIM {
            ops.push(e7_op(&zero_phi, &Jordan::basis(j), &zero_j, &F::zero()));
        }
        for j in 0..JDIM {
            ops.push(e7_op(&zero_phi, &zero_j, &Jordan::basis(j), &F::zero()));
        }
        ops.push(e7_op(&zero_phi, &zero_j, &zero_j, &F::one()));
        let mut solver: SparseSolver<F> = SparseSolver::new(PDIM * PDIM);
        for op in &ops {
            if !solver.insert(sparse_from_dense(&op.a)) {
                return Err(ModelError::Gate(format!(
                    "e7 candidate {} dependent, rank stuck at {}",
                    solver.inserted() - 1,
                    solver.rank()
                )));
            }
        }
        if solver.rank() != E7DIM {
            return Err(ModelError::Gate(format!(
                "e7 span rank {}, expected {E7DIM}",
                solver.rank()
            )));
        }
        Ok(E7Basis { e6, ops, solver })
    }

    /// Coordinates of an operator over the 133 basis; None when the
    /// operator is outside e7 (membership certificate).
    pub fn coords(&self, op: &Mat<F>) -> Option<Vec<F>> {
        debug_assert_eq!((op.rows, op.cols), (PDIM, PDIM));
        self.solver.coords(sparse_from_dense(&op.a))
    }

    pub fn from_coords(&self, c: &[F]) -> Mat<F> {
        assert_eq!(c.len(), E7DIM);
        let mut m = Mat::zero(PDIM, PDIM);
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            m = m.add(&self.ops[k].scale(x));
        }
        m
    }
}

/// lambda(X, Y, xi, eta) = (Y, -X, eta, -xi) as a 56x56 matrix.
pub fn lambda_matrix<F: Field>() -> Mat<F> {
    let mut m = Mat::zero(PDIM, PDIM);
    for j in 0..JDIM {
        *m.at_mut(JDIM + j, j) = F::one().neg();
        *m.at_mut(j, JDIM + j) = F::one();
    }
    *m.at_mut(55, 54) = F::one().neg();
    *m.at_mut(54, 55) = F::one();
    m
}

/// gamma(X, Y, xi, eta) = (gamma X, gamma Y, xi, eta): diagonal signs.
pub fn gamma_matrix<F: Field>() -> Mat<F> {
    let mut m = Mat::zero(PDIM, PDIM);
    let sign_j = |j: usize| -> F {
        // Jordan coordinate j flips iff it is an F_i(e_a) slot with a >= 4.
        if j >= 3 && (j - 3) % 8 >= 4 {
            F::one().neg()
        } else {
            F::one()
        }
    };
    for j in 0..JDIM {
        *m.at_mut(j, j) = sign_j(j);
        *m.at_mut(JDIM + j, JDIM + j) = sign_j(j);
    }
    *m.at_mut(54, 54) = F::one();
    *m.at_mut(55, 55) = F::one();
    m
}

/// The symplectic form {P, Q} = (X, W) - (Z, Y) + xi omega - zeta eta
/// for P = (X, Y, xi, eta), Q = (Z, W, zeta, omega).
pub fn symplectic<F: Field>(p: &[F], q: &[F]) -> F {
    assert_eq!(p.len(), PDIM);
    assert_eq!(q.len(), PDIM);
    let g = |k: usize| -> i64 {
        if k < 3 {
            1
        } else {
            2
        }
    };
    let mut acc = F::zero();
    for k in 0..JDIM {
        let w = F::from_i64(g(k));
        acc.mul_add_assign(&p[k].mul(&w), &q[JDIM + k]);
        let neg = p[JDIM + k].mul(&w).neg();
        acc.mul_add_assign(&neg, &q[k]);
    }
    acc.mul_add_assign(&p[54], &q[55]);
    let neg = p[55].neg();
    acc.mul_add_assign(&neg, &q[54]);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;

    #[test]
    fn lambda_gamma_matrices() {
        let l: Mat<Qi> = lambda_matrix();
        let g: Mat<Qi> = gamma_matrix();
        let id: Mat<Qi> = Mat::identity(PDIM);
        assert_eq!(l.matmul(&l), id.neg());
        assert_eq!(g.matmul(&g), id);
        assert_eq!(l.matmul(&g), g.matmul(&l));
    }

    #[test]
    fn symplectic_skew() {
        for (i, j) in [(0, 27), (5, 32), (54, 55), (10, 40), (3, 30)] {
            let mut p = vec![<Qi as Field>::zero(); PDIM];
            let mut q = vec![<Qi as Field>::zero(); PDIM];
            p[i] = <Qi as Field>::one();
            q[j] = <Qi as Field>::one();
            let a = symplectic(&p, &q);
            let b = symplectic(&q, &p);
            assert_eq!(a, b.neg(), "({i},{j})");
        }
    }

    #[test]
    fn transpose_j_is_adjoint() {
        let phi = l_op::<Qi>(&Jordan::basis(7)).commutator(&l_op(&Jordan::basis(12)));
        let t = transpose_j(&phi);
        for (i, j) in [(0, 0), (2, 9), (14, 25), (26, 3)] {
            let a: Jordan<Qi> = Jordan::basis(i);
            let b: Jordan<Qi> = Jordan::basis(j);
            let phia = Jordan {
                c: phi.mul_vec(&a.c),
            };
            let tb = Jordan { c: t.mul_vec(&b.c) };
            assert_eq!(phia.inner(&b), a.inner(&tb));
        }
    }
}
