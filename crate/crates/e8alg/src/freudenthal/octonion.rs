//! Complexified octonions: 8 coordinates over the basis {1, e1, ..., e7},
//! built by Cayley-Dickson doubling of the quaternions with e4 as the
//! doubling unit (e5 = e1 e4, e6 = e2 e4, e7 = e3 e4). The involution
//! `gamma` negates exactly the doubled half e4..e7.

use crate::scalar::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Oct<F> {
    pub c: [F; 8],
}

impl<F: Field> Oct<F> {
    pub fn zero() -> Self {
        Oct {
            c: std::array::from_fn(|_| F::zero()),
        }
    }

    pub fn one() -> Self {
        Oct::basis(0)
    }

    /// Basis unit: 0 -> 1, a -> e_a for a = 1..7.
    pub fn basis(a: usize) -> Self {
        let mut o = Oct::zero();
        o.c[a] = F::one();
        o
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(F::is_zero)
    }

    pub fn add(&self, o: &Oct<F>) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| self.c[k].add(&o.c[k])),
        }
    }

    pub fn sub(&self, o: &Oct<F>) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| self.c[k].sub(&o.c[k])),
        }
    }

    pub fn neg(&self) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| self.c[k].neg()),
        }
    }

    pub fn scale(&self, s: &F) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| self.c[k].mul(s)),
        }
    }

    /// Octonion conjugation: negates e1..e7.
    pub fn bar(&self) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| if k == 0 { self.c[0].clone() } else { self.c[k].neg() }),
        }
    }

    /// The G2 involution gamma: negates the doubled half e4..e7.
    pub fn gamma(&self) -> Oct<F> {
        Oct {
            c: std::array::from_fn(|k| if k < 4 { self.c[k].clone() } else { self.c[k].neg() }),
        }
    }

    pub fn mul(&self, o: &Oct<F>) -> Oct<F> {
        let mut out: Oct<F> = Oct::zero();
        for a in 0..8 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if o.c[b].is_zero() {
                    continue;
                }
                let (sign, unit) = UNIT_TABLE[a][b];
                let term = self.c[a].mul(&o.c[b]);
                let term = if sign < 0 { term.neg() } else { term };
                out.c[unit].add_assign(&term);
            }
        }
        out
    }

    /// Symmetric bilinear form (x, y) = sum of coordinate products (the
    /// real part of x bar(y) for real coordinates).
    pub fn inner(&self, o: &Oct<F>) -> F {
        let mut acc = F::zero();
        for k in 0..8 {
            acc.mul_add_assign(&self.c[k], &o.c[k]);
        }
        acc
    }
}

/// UNIT_TABLE[a][b] = (sign, c) with basis_a * basis_b = sign * basis_c,
/// generated once from the Cayley-Dickson rule (a,b)(c,d) = (ac - db*, da + bc*)
/// over the quaternion table.
static UNIT_TABLE: once_cell::sync::Lazy<[[(i8, usize); 8]; 8]> =
    once_cell::sync::Lazy::new(|| {
        // Quaternions as integer coordinate vectors over {1, e1, e2, e3}.
        fn qmul(x: [i8; 4], y: [i8; 4]) -> [i8; 4] {
            // e1 e2 = e3, e2 e3 = e1, e3 e1 = e2, ei^2 = -1.
            let mut r = [0i8; 4];
            const T: [[(i8, usize); 4]; 4] = [
                [(1, 0), (1, 1), (1, 2), (1, 3)],
                [(1, 1), (-1, 0), (1, 3), (-1, 2)],
                [(1, 2), (-1, 3), (-1, 0), (1, 1)],
                [(1, 3), (1, 2), (-1, 1), (-1, 0)],
            ];
            for a in 0..4 {
                for b in 0..4 {
                    let (s, c) = T[a][b];
                    r[c] += s * x[a] * y[b];
                }
            }
            r
        }
        fn qconj(x: [i8; 4]) -> [i8; 4] {
            [x[0], -x[1], -x[2], -x[3]]
        }
        let mut table = [[(0i8, 0usize); 8]; 8];
        for ua in 0..8 {
            for ub in 0..8 {
                // Split into quaternion pairs (a, b) with unit = a + b e4.
                let mut xa = [0i8; 4];
                let mut xb = [0i8; 4];
                if ua < 4 {
                    xa[ua] = 1;
                } else {
                    xb[ua - 4] = 1;
                }
                let mut ya = [0i8; 4];
                let mut yb = [0i8; 4];
                if ub < 4 {
                    ya[ub] = 1;
                } else {
                    yb[ub - 4] = 1;
                }
                // (a,b)(c,d) = (ac - d* b, d a + b c*)
                let re = {
                    let mut r = qmul(xa, ya);
                    let s = qmul(qconj(yb), xb);
                    for k in 0..4 {
                        r[k] -= s[k];
                    }
                    r
                };
                let im = {
                    let mut r = qmul(yb, xa);
                    let s = qmul(xb, qconj(ya));
                    for k in 0..4 {
                        r[k] += s[k];
                    }
                    r
                };
                let mut entry = None;
                for k in 0..4 {
                    if re[k] != 0 {
                        assert!(entry.is_none());
                        entry = Some((re[k], k));
                    }
                    if im[k] != 0 {
                        assert!(entry.is_none());
                        entry = Some((im[k], k + 4));
                    }
                }
                let (s, c) = entry.expect("unit product must be a signed unit");
                assert!(s == 1 || s == -1);
                table[ua][ub] = (s, c);
            }
        }
        table
    });

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;

    type O = Oct<Qi>;

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for a in 1..8 {
            let e: O = Oct::basis(a);
            assert_eq!(e.mul(&e), Oct::basis(0).neg(), "e{a}^2");
        }
    }

    #[test]
    fn alternative_and_norm_multiplicative() {
        // x(xy) = (xx)y and N(xy) = N(x)N(y) on integer samples.
        let x: O = Oct::basis(1).add(&Oct::basis(4).scale(&Qi::from_int(2)));
        let y: O = Oct::basis(0).add(&Oct::basis(7).scale(&Qi::from_int(3)));
        assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
        assert_eq!(x.mul(&y).mul(&y), x.mul(&y.mul(&y)));
        let n = |z: &O| z.mul(&z.bar()).c[0].clone();
        assert_eq!(n(&x.mul(&y)), n(&x).mul(&n(&y)));
    }

    #[test]
    fn gamma_is_an_algebra_involution() {
        for a in 0..8 {
            for b in 0..8 {
                let x: O = Oct::basis(a);
                let y: O = Oct::basis(b);
                assert_eq!(x.gamma().mul(&y.gamma()), x.mul(&y).gamma());
                assert_eq!(x.gamma().gamma(), x);
            }
        }
    }

    #[test]
    fn conjugation_antihomomorphism() {
        for a in 0..8 {
            for b in 0..8 {
                let x: O = Oct::basis(a);
                let y: O = Oct::basis(b);
                assert_eq!(x.mul(&y).bar(), y.bar().mul(&x.bar()));
            }
        }
    }
}
