//! The exceptional Jordan algebra J: 3x3 Hermitian matrices over the
//! complexified octonions, 27-dimensional over C.
//!
//! Coordinate order (frozen): E1, E2, E3 (diagonal idempotents), then
//! F1(e_a) a = 0..7, F2(e_a), F3(e_a), where F1(x) places x in the (2,3)
//! entry (and bar(x) in (3,2)), cyclically for F2, F3.

use super::octonion::Oct;
use crate::scalar::{Field, Rat};
use once_cell::sync::Lazy;

pub const JDIM: usize = 27;

/// Sparse structure constants of the Jordan product over the frozen basis:
/// `JORDAN_TABLE[i][j]` lists (k, c) with e_i o e_j = sum c e_k. Computed
/// once from the octonionic matrix product; everything downstream uses this
/// table so that sparse products cost proportional to their support.
static JORDAN_TABLE: Lazy<Vec<Vec<Vec<(u8, Rat)>>>> = Lazy::new(|| {
    let mut table = vec![vec![Vec::new(); JDIM]; JDIM];
    for i in 0..JDIM {
        for j in i..JDIM {
            let p: Jordan<Rat> =
                Jordan::<Rat>::basis(i).jordan_mul_via_matrix(&Jordan::basis(j));
            let entries: Vec<(u8, Rat)> = p
                .c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k as u8, x.clone()))
                .collect();
            table[j][i] = entries.clone();
            table[i][j] = entries;
        }
    }
    table
});

#[derive(Clone, PartialEq, Debug)]
pub struct Jordan<F> {
    pub c: Vec<F>, // length 27
}

impl<F: Field> Jordan<F> {
    pub fn zero() -> Self {
        Jordan {
            c: vec![F::zero(); JDIM],
        }
    }

    pub fn basis(j: usize) -> Self {
        let mut x = Jordan::zero();
        x.c[j] = F::one();
        x
    }

    /// The Jordan unit E = E1 + E2 + E3.
    pub fn unit() -> Self {
        let mut x = Jordan::zero();
        for j in 0..3 {
            x.c[j] = F::one();
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(F::is_zero)
    }

    pub fn add(&self, o: &Jordan<F>) -> Jordan<F> {
        Jordan {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Jordan<F>) -> Jordan<F> {
        Jordan {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Jordan<F> {
        Jordan {
            c: self.c.iter().map(F::neg).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Jordan<F> {
        Jordan {
            c: self.c.iter().map(|x| x.mul(s)).collect(),
        }
    }

    pub fn trace(&self) -> F {
        self.c[0].add(&self.c[1]).add(&self.c[2])
    }

    fn off(&self, i: usize) -> Oct<F> {
        // i = 0,1,2 for the x1, x2, x3 slots.
        Oct {
            c: std::array::from_fn(|a| self.c[3 + 8 * i + a].clone()),
        }
    }

    /// 3x3 octonionic matrix [[xi1, x3, bar x2], [bar x3, xi2, x1],
    /// [x2, bar x1, xi3]].
    fn to_mat(&self) -> [[Oct<F>; 3]; 3] {
        let x1 = self.off(0);
        let x2 = self.off(1);
        let x3 = self.off(2);
        let diag = |k: usize| Oct::one().scale(&self.c[k]);
        [
            [diag(0), x3.clone(), x2.bar()],
            [x3.bar(), diag(1), x1.clone()],
            [x2, x1.bar(), diag(2)],
        ]
    }

    fn from_mat(m: &[[Oct<F>; 3]; 3]) -> Jordan<F> {
        let mut out = Jordan::zero();
        for k in 0..3 {
            debug_assert!(
                m[k][k].c[1..].iter().all(F::is_zero),
                "diagonal entry not scalar"
            );
            out.c[k] = m[k][k].c[0].clone();
        }
        let offs = [
            m[1][2].clone(), // x1
            m[2][0].clone(), // x2
            m[0][1].clone(), // x3
        ];
        debug_assert!(m[2][1] == offs[0].bar() && m[0][2] == offs[1].bar() && m[1][0] == offs[2].bar());
        for (i, x) in offs.iter().enumerate() {
            for a in 0..8 {
                out.c[3 + 8 * i + a] = x.c[a].clone();
            }
        }
        out
    }

    /// Jordan product A o B = (AB + BA)/2, via the precomputed structure
    /// table; cost is proportional to the supports of A and B.
    pub fn jordan_mul(&self, o: &Jordan<F>) -> Jordan<F> {
        let table = &*JORDAN_TABLE;
        let mut out: Jordan<F> = Jordan::zero();
        for (i, ai) in self.c.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in o.c.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul(bj);
                for (k, coef) in &table[i][j] {
                    out.c[*k as usize].add_assign(&ab.mul(&F::from_rat(coef)));
                }
            }
        }
        out
    }

    /// Reference implementation through the 3x3 octonionic matrix product;
    /// used to build the structure table and as a cross-check in tests.
    pub fn jordan_mul_via_matrix(&self, o: &Jordan<F>) -> Jordan<F> {
        let a = self.to_mat();
        let b = o.to_mat();
        let half = F::from_ratio(1, 2);
        let mut m: [[Oct<F>; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Oct::zero()));
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Oct::zero();
                for k in 0..3 {
                    acc = acc.add(&a[r][k].mul(&b[k][c]));
                    acc = acc.add(&b[r][k].mul(&a[k][c]));
                }
                m[r][c] = acc.scale(&half);
            }
        }
        Jordan::from_mat(&m)
    }

    /// Symmetric bilinear form (A, B) = tr(A o B).
    pub fn inner(&self, o: &Jordan<F>) -> F {
        // Gram is diag(1,1,1, 2 x 24) over the frozen basis.
        let mut acc = F::zero();
        for k in 0..3 {
            acc.mul_add_assign(&self.c[k], &o.c[k]);
        }
        let two = F::from_i64(2);
        for k in 3..JDIM {
            acc.mul_add_assign(&self.c[k].mul(&two), &o.c[k]);
        }
        acc
    }

    /// Freudenthal cross product:
    /// A x B = (1/2)(2 A o B - tr(A) B - tr(B) A + (tr(A)tr(B) - (A,B)) E).
    pub fn cross(&self, o: &Jordan<F>) -> Jordan<F> {
        if self.is_zero() || o.is_zero() {
            return Jordan::zero();
        }
        let ab = self.jordan_mul(o);
        let ta = self.trace();
        let tb = o.trace();
        let mut out = ab.scale(&F::from_i64(2));
        out = out.sub(&o.scale(&ta));
        out = out.sub(&self.scale(&tb));
        let e_coef = ta.mul(&tb).sub(&self.inner(o));
        out = out.add(&Jordan::unit().scale(&e_coef));
        out.scale(&F::from_ratio(1, 2))
    }

    /// Entrywise octonion involution gamma (diagonal untouched).
    pub fn gamma(&self) -> Jordan<F> {
        let mut out = self.clone();
        for i in 0..3 {
            for a in 4..8 {
                out.c[3 + 8 * i + a] = out.c[3 + 8 * i + a].neg();
            }
        }
        out
    }

    pub fn conj(&self) -> Jordan<F> {
        Jordan {
            c: self.c.iter().map(F::conj).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;

    type J = Jordan<Qi>;

    #[test]
    fn table_product_matches_matrix_product() {
        for i in 0..JDIM {
            for j in 0..JDIM {
                let a: J = Jordan::basis(i);
                let b: J = Jordan::basis(j);
                assert_eq!(
                    a.jordan_mul(&b),
                    a.jordan_mul_via_matrix(&b),
                    "({i},{j})"
                );
            }
        }
    }

    #[test]
    fn unit_is_jordan_identity() {
        let e: J = Jordan::unit();
        for j in 0..JDIM {
            let b: J = Jordan::basis(j);
            assert_eq!(e.jordan_mul(&b), b, "E o basis {j}");
        }
    }

    #[test]
    fn jordan_product_commutative_and_jordan_identity() {
        for (i, j) in [(0, 5), (3, 12), (7, 20), (11, 26), (1, 2)] {
            let a: J = Jordan::basis(i);
            let b: J = Jordan::basis(j);
            assert_eq!(a.jordan_mul(&b), b.jordan_mul(&a));
        }
        // (A^2 o B) o A = A^2 o (B o A) on a nontrivial sample.
        let a: J = Jordan::basis(0)
            .add(&Jordan::basis(4).scale(&Qi::from_int(2)))
            .add(&Jordan::basis(15));
        let b: J = Jordan::basis(2).add(&Jordan::basis(22).scale(&Qi::from_int(3)));
        let a2 = a.jordan_mul(&a);
        assert_eq!(
            a2.jordan_mul(&b).jordan_mul(&a),
            a2.jordan_mul(&b.jordan_mul(&a))
        );
    }

    #[test]
    fn inner_gram_matches_trace_form() {
        for i in 0..JDIM {
            for j in 0..JDIM {
                let a: J = Jordan::basis(i);
                let b: J = Jordan::basis(j);
                assert_eq!(a.inner(&b), a.jordan_mul(&b).trace(), "({i},{j})");
            }
        }
    }

    #[test]
    fn cross_of_unit_with_unit() {
        let e: J = Jordan::unit();
        // Regression constant pinned by the downstream dimension gates.
        assert_eq!(e.cross(&e), e);
    }

    #[test]
    fn gamma_is_jordan_automorphism() {
        for (i, j) in [(0, 3), (5, 14), (10, 23), (26, 26), (4, 19)] {
            let a: J = Jordan::basis(i);
            let b: J = Jordan::basis(j);
            assert_eq!(
                a.gamma().jordan_mul(&b.gamma()),
                a.jordan_mul(&b).gamma()
            );
        }
    }
}
