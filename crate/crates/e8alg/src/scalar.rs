//! Scalar backends and exact dense linear algebra.
//!
//! Three coefficient backends share the [`Field`] interface:
//! rational-complex `Qi` (the default exact backend), the degree-8
//! cyclotomic extension `Z24` containing the 24th roots of unity, and a
//! double-precision complex fallback `C64`. Exact backends never round;
//! all invariants downstream (ranks, kernels, structure constants) are
//! certified over them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar backend mismatch: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),
    #[error("bad scalar literal `{0}`")]
    Parse(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn rzero() -> Rat {
    <Rat as Zero>::zero()
}

fn rone() -> Rat {
    <Rat as One>::one()
}

/// Common interface of the three coefficient backends.
///
/// Arithmetic is by reference; values are immutable and freely shared
/// between workers.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// The imaginary unit, if the backend contains one.
    fn imag_unit() -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Complex conjugation. An involutive field automorphism on every backend.
    fn conj(&self) -> Self;

    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> C64;

    fn literal(&self) -> String;
    fn parse_literal(s: &str) -> Result<Self, ScalarError>;

    /// Exact rational real/imaginary parts when the value lies in Q(i)
    /// inside the backend; None otherwise (always None for floats).
    fn re_im(&self) -> Option<(Rat, Rat)>;
    fn from_re_im(re: &Rat, im: &Rat) -> Self {
        let mut x = Self::from_rat(re);
        if !Zero::is_zero(im) {
            let iu = Self::imag_unit().expect("backend has no imaginary unit");
            x = x.add(&iu.mul(&Self::from_rat(im)));
        }
        x
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero in exact elimination"))
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self = self.add(&a.mul(b));
        }
    }
}

impl Field for Rat {
    const EXACT: bool = true;
    const NAME: &'static str = "q";

    fn zero() -> Self {
        rzero()
    }
    fn one() -> Self {
        rone()
    }
    fn from_i64(n: i64) -> Self {
        rat(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        ratio(p, q)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn abs_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN).abs()
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn literal(&self) -> String {
        format!("{self}")
    }
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        Rat::from_str(s.trim()).map_err(|_| ScalarError::Parse(s.to_string()))
    }
    fn re_im(&self) -> Option<(Rat, Rat)> {
        Some((self.clone(), rzero()))
    }
}

/// Gaussian rational: an element of Q(i) stored as exact real and
/// imaginary parts.
#[derive(Clone, PartialEq, Debug)]
pub struct Qi {
    pub re: Rat,
    pub im: Rat,
}

impl Qi {
    pub fn new(re: Rat, im: Rat) -> Self {
        Qi { re, im }
    }
    pub fn from_int(n: i64) -> Self {
        Qi::new(rat(n), rzero())
    }
    pub fn i() -> Self {
        Qi::new(rzero(), rone())
    }
    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Field for Qi {
    const EXACT: bool = true;
    const NAME: &'static str = "qi";

    fn zero() -> Self {
        Qi::new(rzero(), rzero())
    }
    fn one() -> Self {
        Qi::new(rone(), rzero())
    }
    fn from_i64(n: i64) -> Self {
        Qi::from_int(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Qi::new(ratio(p, q), rzero())
    }
    fn from_rat(r: &Rat) -> Self {
        Qi::new(r.clone(), rzero())
    }
    fn imag_unit() -> Option<Self> {
        Some(Qi::i())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Qi::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Qi::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Qi::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Qi::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Qi::new(&self.re / &n, -&self.im / &n))
    }
    fn conj(&self) -> Self {
        Qi::new(self.re.clone(), -&self.im)
    }
    fn abs_f64(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        re.hypot(im)
    }
    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn literal(&self) -> String {
        if Zero::is_zero(&self.im) {
            return format!("{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            return format!("{}*i", self.im);
        }
        if self.im.is_negative() {
            format!("{}-{}*i", self.re, -&self.im)
        } else {
            format!("{}+{}*i", self.re, self.im)
        }
    }
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        if let Some(body) = s.strip_suffix("*i") {
            // Split "re±im" at the sign that starts the imaginary term.
            if let Some(pos) = body.rfind(['+', '-']).filter(|&p| p > 0) {
                let (re, im_signed) = body.split_at(pos);
                let re = Rat::from_str(re).map_err(|_| err())?;
                let im = Rat::from_str(im_signed).map_err(|_| err())?;
                Ok(Qi::new(re, im))
            } else {
                let im = Rat::from_str(body).map_err(|_| err())?;
                Ok(Qi::new(rzero(), im))
            }
        } else {
            let re = Rat::from_str(s).map_err(|_| err())?;
            Ok(Qi::new(re, rzero()))
        }
    }
    fn re_im(&self) -> Option<(Rat, Rat)> {
        Some((self.re.clone(), self.im.clone()))
    }
}

/// Element of Q(zeta_24) over the power basis {1, z, ..., z^7}, reduced by
/// z^8 = z^4 - 1. Contains i = z^6, omega = z^8 (order 3) and z itself of
/// order 24.
#[derive(Clone, PartialEq, Debug)]
pub struct Z24 {
    pub c: [Rat; 8],
}

impl Z24 {
    pub fn from_coords(c: [Rat; 8]) -> Self {
        Z24 { c }
    }

    /// zeta_24^n, n taken mod 24.
    pub fn zeta_pow(n: i64) -> Self {
        let n = n.rem_euclid(24) as usize;
        let mut acc = <Z24 as Field>::one();
        let z = {
            let mut c: [Rat; 8] = Default::default();
            c[1] = rone();
            Z24 { c }
        };
        for _ in 0..n {
            acc = acc.mul(&z);
        }
        acc
    }

    /// Multiplication matrix of `self` over the power basis.
    fn mul_matrix(&self) -> Mat<Rat> {
        let mut m = Mat::zero(8, 8);
        for j in 0..8 {
            let mut basis: [Rat; 8] = Default::default();
            basis[j] = rone();
            let prod = self.mul(&Z24 { c: basis });
            for i in 0..8 {
                *m.at_mut(i, j) = prod.c[i].clone();
            }
        }
        m
    }
}

impl fmt::Display for Z24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Field for Z24 {
    const EXACT: bool = true;
    const NAME: &'static str = "zeta24";

    fn zero() -> Self {
        Z24 {
            c: Default::default(),
        }
    }
    fn one() -> Self {
        let mut c: [Rat; 8] = Default::default();
        c[0] = rone();
        Z24 { c }
    }
    fn from_i64(n: i64) -> Self {
        let mut c: [Rat; 8] = Default::default();
        c[0] = rat(n);
        Z24 { c }
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        let mut c: [Rat; 8] = Default::default();
        c[0] = ratio(p, q);
        Z24 { c }
    }
    fn from_rat(r: &Rat) -> Self {
        let mut c: [Rat; 8] = Default::default();
        c[0] = r.clone();
        Z24 { c }
    }
    fn imag_unit() -> Option<Self> {
        Some(Z24::zeta_pow(6))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        let mut c: [Rat; 8] = Default::default();
        for k in 0..8 {
            c[k] = &self.c[k] + &o.c[k];
        }
        Z24 { c }
    }
    fn sub(&self, o: &Self) -> Self {
        let mut c: [Rat; 8] = Default::default();
        for k in 0..8 {
            c[k] = &self.c[k] - &o.c[k];
        }
        Z24 { c }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut conv: Vec<Rat> = vec![rzero(); 15];
        for a in 0..8 {
            if Zero::is_zero(&self.c[a]) {
                continue;
            }
            for b in 0..8 {
                if Zero::is_zero(&o.c[b]) {
                    continue;
                }
                conv[a + b] += &self.c[a] * &o.c[b];
            }
        }
        // z^d = z^(d-4) - z^(d-8) for d >= 8
        for d in (8..15).rev() {
            if Zero::is_zero(&conv[d]) {
                continue;
            }
            let v = std::mem::replace(&mut conv[d], rzero());
            conv[d - 4] += &v;
            conv[d - 8] -= &v;
        }
        let mut c: [Rat; 8] = Default::default();
        for k in 0..8 {
            c[k] = std::mem::replace(&mut conv[k], rzero());
        }
        Z24 { c }
    }
    fn neg(&self) -> Self {
        let mut c: [Rat; 8] = Default::default();
        for k in 0..8 {
            c[k] = -&self.c[k];
        }
        Z24 { c }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        // Solve (mul-by-self) x = 1 over Q.
        let m = self.mul_matrix();
        let mut rhs = vec![rzero(); 8];
        rhs[0] = rone();
        let x = m.solve(&rhs)?;
        let mut c: [Rat; 8] = Default::default();
        for k in 0..8 {
            c[k] = x[k].clone();
        }
        Some(Z24 { c })
    }
    fn conj(&self) -> Self {
        // zeta -> zeta^-1
        let mut acc = <Z24 as Field>::zero();
        for (k, coeff) in self.c.iter().enumerate() {
            if Zero::is_zero(coeff) {
                continue;
            }
            let mut term = Z24::zeta_pow(-(k as i64));
            for e in term.c.iter_mut() {
                *e *= coeff;
            }
            acc = acc.add(&term);
        }
        acc
    }
    fn abs_f64(&self) -> f64 {
        self.to_c64().abs()
    }
    fn to_c64(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (k, coeff) in self.c.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / 24.0;
            let w = coeff.to_f64().unwrap_or(f64::NAN);
            acc = acc.add(&C64::new(w * ang.cos(), w * ang.sin()));
        }
        acc
    }
    fn literal(&self) -> String {
        self.c
            .iter()
            .map(|r| format!("{r}"))
            .collect::<Vec<_>>()
            .join(",")
    }
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != 8 {
            return Err(ScalarError::Parse(s.to_string()));
        }
        let mut c: [Rat; 8] = Default::default();
        for (k, p) in parts.iter().enumerate() {
            c[k] = Rat::from_str(p.trim()).map_err(|_| ScalarError::Parse(s.to_string()))?;
        }
        Ok(Z24 { c })
    }
    fn re_im(&self) -> Option<(Rat, Rat)> {
        // Lies in Q(i) iff only the 1 and zeta^6 = i coordinates are nonzero.
        for (k, x) in self.c.iter().enumerate() {
            if k != 0 && k != 6 && !Zero::is_zero(x) {
                return None;
            }
        }
        Some((self.c[0].clone(), self.c[6].clone()))
    }
}

/// Double-precision complex fallback backend.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Field for C64 {
    const EXACT: bool = false;
    const NAME: &'static str = "f64";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        C64::new(p as f64 / q as f64, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        C64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn imag_unit() -> Option<Self> {
        Some(C64::new(0.0, 1.0))
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn neg(&self) -> Self {
        C64::new(-self.re, -self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n == 0.0 {
            return None;
        }
        Some(C64::new(self.re / n, -self.im / n))
    }
    fn conj(&self) -> Self {
        C64::new(self.re, -self.im)
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn literal(&self) -> String {
        if self.im == 0.0 {
            return format!("{}", self.re);
        }
        if self.re == 0.0 {
            return format!("{}*i", self.im);
        }
        if self.im < 0.0 {
            format!("{}-{}*i", self.re, -self.im)
        } else {
            format!("{}+{}*i", self.re, self.im)
        }
    }
    fn parse_literal(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        let parse_f = |t: &str| f64::from_str(t).map_err(|_| err());
        if let Some(body) = s.strip_suffix("*i") {
            // Avoid splitting inside exponents like 1e-3.
            let pos = body
                .char_indices()
                .rev()
                .find(|&(p, ch)| {
                    (ch == '+' || ch == '-')
                        && p > 0
                        && !matches!(body.as_bytes()[p - 1], b'e' | b'E')
                })
                .map(|(p, _)| p);
            if let Some(p) = pos {
                let (re, im) = body.split_at(p);
                Ok(C64::new(parse_f(re)?, parse_f(im)?))
            } else {
                Ok(C64::new(0.0, parse_f(body)?))
            }
        } else {
            Ok(C64::new(parse_f(s)?, 0.0))
        }
    }
    fn re_im(&self) -> Option<(Rat, Rat)> {
        None
    }
}

/// Runtime-tagged scalar; the dynamic face of the three backends used by
/// file formats and the CLI. Arithmetic never silently mixes backends.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Qi(Qi),
    Z24(Z24),
    F64(C64),
}

impl Scalar {
    pub fn backend(&self) -> &'static str {
        match self {
            Scalar::Qi(_) => Qi::NAME,
            Scalar::Z24(_) => Z24::NAME,
            Scalar::F64(_) => C64::NAME,
        }
    }

    pub fn add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.zip(o, Field::add, Field::add, Field::add)
    }
    pub fn sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.zip(o, Field::sub, Field::sub, Field::sub)
    }
    pub fn mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.zip(o, Field::mul, Field::mul, Field::mul)
    }
    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = match o {
            Scalar::Qi(x) => Scalar::Qi(x.inv().ok_or(ScalarError::DivisionByZero)?),
            Scalar::Z24(x) => Scalar::Z24(x.inv().ok_or(ScalarError::DivisionByZero)?),
            Scalar::F64(x) => Scalar::F64(x.inv().ok_or(ScalarError::DivisionByZero)?),
        };
        self.mul(&inv)
    }
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Qi(x) => Scalar::Qi(x.conj()),
            Scalar::Z24(x) => Scalar::Z24(x.conj()),
            Scalar::F64(x) => Scalar::F64(x.conj()),
        }
    }

    pub fn literal(&self) -> String {
        match self {
            Scalar::Qi(x) => x.literal(),
            Scalar::Z24(x) => x.literal(),
            Scalar::F64(x) => x.literal(),
        }
    }

    pub fn parse(backend: &str, s: &str) -> Result<Scalar, ScalarError> {
        match backend {
            "qi" => Ok(Scalar::Qi(Qi::parse_literal(s)?)),
            "zeta24" => Ok(Scalar::Z24(Z24::parse_literal(s)?)),
            "f64" => Ok(Scalar::F64(C64::parse_literal(s)?)),
            other => Err(ScalarError::Parse(format!("unknown backend {other}"))),
        }
    }

    fn zip(
        &self,
        o: &Scalar,
        f1: fn(&Qi, &Qi) -> Qi,
        f2: fn(&Z24, &Z24) -> Z24,
        f3: fn(&C64, &C64) -> C64,
    ) -> Result<Scalar, ScalarError> {
        match (self, o) {
            (Scalar::Qi(a), Scalar::Qi(b)) => Ok(Scalar::Qi(f1(a, b))),
            (Scalar::Z24(a), Scalar::Z24(b)) => Ok(Scalar::Z24(f2(a, b))),
            (Scalar::F64(a), Scalar::F64(b)) => Ok(Scalar::F64(f3(a, b))),
            _ => Err(ScalarError::BackendMismatch(self.backend(), o.backend())),
        }
    }
}

/// Dense row-major matrix over a scalar backend.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        Mat { rows, cols, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .zip(&o.a)
                .map(|(x, y)| Field::add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .zip(&o.a)
                .map(|(x, y)| Field::sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(Field::neg).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| x.mul(s)).collect(),
        }
    }

    pub fn matmul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows);
        let mut out: Mat<F> = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let y = o.at(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    out.at_mut(i, j).add_assign(&x.mul(y));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![F::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i].mul_add_assign(self.at(i, j), &v[j]);
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let mut t = F::zero();
        for k in 0..self.rows {
            t.add_assign(self.at(k, k));
        }
        t
    }

    pub fn commutator(&self, o: &Mat<F>) -> Mat<F> {
        self.matmul(o).sub(&o.matmul(self))
    }

    pub fn conj_entrywise(&self) -> Mat<F> {
        self.map(Field::conj)
    }

    /// Rank by fraction-free (Bareiss) elimination; pivot is the first
    /// nonzero entry of the column. Exact backends only.
    pub fn rank_exact(&self) -> usize {
        assert!(F::EXACT, "rank_exact requires an exact backend");
        let mut m = self.clone();
        let mut prev = F::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.a.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let piv = m.at(row, col).clone();
            for r in row + 1..m.rows {
                let lead = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j).mul(&piv).sub(&lead.mul(m.at(row, j)));
                    *m.at_mut(r, j) = v.div_exact(&prev);
                }
            }
            prev = piv;
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Rank with a magnitude tolerance; the float-backend counterpart of
    /// [`Mat::rank_exact`].
    pub fn rank_with_tol(&self, tol: f64) -> usize {
        let mut m: Vec<Vec<C64>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(Field::to_c64).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let (p, best) = (row..self.rows)
                .map(|r| (r, m[r][col].abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if best <= tol {
                continue;
            }
            m.swap(row, p);
            let piv = m[row][col];
            let piv_inv = piv.inv().unwrap();
            for r in row + 1..self.rows {
                let factor = m[r][col].mul(&piv_inv);
                if factor.abs() == 0.0 {
                    continue;
                }
                for j in col..self.cols {
                    let s = m[row][j].mul(&factor);
                    m[r][j] = m[r][j].sub(&s);
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    pub fn rank(&self, tol: Option<f64>) -> usize {
        if F::EXACT {
            self.rank_exact()
        } else {
            self.rank_with_tol(tol.unwrap_or(1e-9))
        }
    }

    /// Reduced row echelon form together with the transform `t` such that
    /// `rref = t * self`, and the pivot columns.
    pub fn rref_with_transform(&self) -> (Mat<F>, Mat<F>, Vec<usize>) {
        assert!(F::EXACT, "rref requires an exact backend");
        let mut m = self.clone();
        let mut t: Mat<F> = Mat::identity(self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.a.swap(row * m.cols + j, p * m.cols + j);
                }
                for j in 0..t.cols {
                    t.a.swap(row * t.cols + j, p * t.cols + j);
                }
            }
            let piv_inv = m.at(row, col).inv().unwrap();
            for j in 0..m.cols {
                let v = m.at(row, j).mul(&piv_inv);
                *m.at_mut(row, j) = v;
            }
            for j in 0..t.cols {
                let v = t.at(row, j).mul(&piv_inv);
                *t.at_mut(row, j) = v;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in 0..m.cols {
                    let s = factor.mul(m.at(row, j));
                    let v = m.at(r, j).sub(&s);
                    *m.at_mut(r, j) = v;
                }
                for j in 0..t.cols {
                    let s = factor.mul(t.at(row, j));
                    let v = t.at(r, j).sub(&s);
                    *t.at_mut(r, j) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, t, pivots)
    }

    /// Exact basis of the kernel { v | Mv = 0 }.
    pub fn null_space(&self) -> Vec<Vec<F>> {
        let (r, _, pivots) = self.rref_with_transform();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.at(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse of a square matrix; None if singular.
    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let (r, t, pivots) = self.rref_with_transform();
        if pivots.len() != self.rows {
            return None;
        }
        debug_assert!(r == Mat::identity(self.rows));
        Some(t)
    }

    /// Solve Mx = rhs exactly (square, invertible); None if singular.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = rhs[i].clone();
        }
        let (r, _, pivots) = aug.rref_with_transform();
        if pivots.len() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }
}

/// Solves coordinates with respect to a fixed spanning set of row vectors.
///
/// Construction echelonizes the basis once; membership queries then cost a
/// reduction against the reduced rows.
pub struct SpanSolver<F: Field> {
    rref: Mat<F>,
    t_transpose: Mat<F>,
    pivots: Vec<usize>,
    pub dim: usize,
    pub ambient: usize,
}

impl<F: Field> SpanSolver<F> {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &Mat<F>) -> Self {
        let (rref, t, pivots) = basis.rref_with_transform();
        assert_eq!(
            pivots.len(),
            basis.rows,
            "span basis is linearly dependent: rank {} of {} rows",
            pivots.len(),
            basis.rows
        );
        SpanSolver {
            rref,
            t_transpose: t.transpose(),
            pivots,
            dim: basis.rows,
            ambient: basis.cols,
        }
    }

    /// Coordinates of `w` in the original basis; None when `w` is outside
    /// the span (checked exactly).
    pub fn coords(&self, w: &[F]) -> Option<Vec<F>> {
        assert_eq!(w.len(), self.ambient);
        // In RREF coordinates the coefficient on row r is w[pivot_r].
        let c_rref: Vec<F> = self.pivots.iter().map(|&p| w[p].clone()).collect();
        // Residual check: w - sum_r c_r * rref_r must vanish.
        let mut residual: Vec<F> = w.to_vec();
        for (r, c) in c_rref.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                let x = self.rref.at(r, j);
                if x.is_zero() {
                    continue;
                }
                let s = c.mul(x);
                residual[j] = residual[j].sub(&s);
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.t_transpose.mul_vec(&c_rref))
    }
}

/// Sparse vector: (index, value) pairs sorted by index, values nonzero.
pub type SparseVec<F> = Vec<(u32, F)>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

/// out = a + c * b, all sorted sparse.
pub fn sparse_axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = c.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get<F: Field>(v: &SparseVec<F>, idx: u32) -> Option<&F> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &v[p].1)
}

/// Incremental exact Gauss-Jordan over sparse rows, tracking each reduced
/// row as a combination of the inserted originals. Supports rank queries,
/// membership tests and coordinate extraction against the inserted span.
pub struct SparseSolver<F: Field> {
    ambient: usize,
    /// Kept in RREF, sorted by leading index; combo expresses the row over
    /// inserted-original indices.
    rows: Vec<SparseRow<F>>,
    inserted: usize,
}

struct SparseRow<F> {
    lead: u32,
    v: SparseVec<F>,
    combo: SparseVec<F>,
}

impl<F: Field> SparseSolver<F> {
    pub fn new(ambient: usize) -> Self {
        assert!(F::EXACT);
        SparseSolver {
            ambient,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Add a vector to the span; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.iter().all(|e| (e.0 as usize) < self.ambient));
        let self_idx = self.inserted as u32;
        self.inserted += 1;
        let (mut res, mut combo) = self.reduce(v);
        combo.push((self_idx, F::one()));
        if res.is_empty() {
            return false;
        }
        // Normalize to leading coefficient 1.
        let lead = res[0].0;
        let inv = res[0].1.inv().unwrap();
        for e in res.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        for e in combo.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        // Eliminate the new lead from every existing row (full RREF).
        for row in self.rows.iter_mut() {
            if let Some(x) = sparse_get(&row.v, lead) {
                let c = x.neg();
                row.v = sparse_axpy(&row.v, &c, &res);
                row.combo = sparse_axpy(&row.combo, &c, &combo);
            }
        }
        let pos = self
            .rows
            .partition_point(|r| r.lead < lead);
        self.rows.insert(pos, SparseRow { lead, v: res, combo });
        true
    }

    /// Reduce v against the current rows; returns the residual and the
    /// coefficient combination (over inserted originals) that was removed,
    /// negated so that v = residual - combo-part... concretely:
    /// v = res + sum_r a_r row_r and the returned combo equals
    /// -sum_r a_r combo_r (so inserting can extend it with +1 on itself).
    fn reduce(&self, v: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut res = v;
        let mut combo: SparseVec<F> = Vec::new();
        for row in &self.rows {
            if let Some(x) = sparse_get(&res, row.lead) {
                let c = x.neg();
                res = sparse_axpy(&res, &c, &row.v);
                combo = sparse_axpy(&combo, &c, &row.combo);
            }
        }
        (res, combo)
    }

    /// Coordinates of v over the inserted originals (length `inserted()`);
    /// None when v is outside the span. Dependent originals always get
    /// coefficient zero.
    pub fn coords(&self, v: SparseVec<F>) -> Option<Vec<F>> {
        let (res, combo) = self.reduce(v);
        if !res.is_empty() {
            return None;
        }
        let mut out = vec![F::zero(); self.inserted];
        for (i, x) in combo {
            out[i as usize] = x.neg();
        }
        Some(out)
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(re: i64, im: i64) -> Qi {
        Qi::new(rat(re), rat(im))
    }

    #[test]
    fn conjugation_of_i() {
        assert_eq!(Qi::i().conj(), qi(0, -1));
        let i24 = Z24::imag_unit().unwrap();
        assert_eq!(i24.conj(), i24.neg());
    }

    #[test]
    fn zeta_relations() {
        let i = Z24::zeta_pow(6);
        assert_eq!(i.mul(&i), Z24::from_i64(-1));
        let omega = Z24::zeta_pow(8);
        assert_eq!(omega.mul(&omega).mul(&omega), <Z24 as Field>::one());
        assert_ne!(omega, <Z24 as Field>::one());
        // full order 24
        let z = Z24::zeta_pow(1);
        let mut acc = <Z24 as Field>::one();
        for k in 1..24 {
            acc = acc.mul(&z);
            assert_ne!(acc, <Z24 as Field>::one(), "zeta^{k} = 1 prematurely");
        }
        assert_eq!(acc.mul(&z), <Z24 as Field>::one());
    }

    #[test]
    fn z24_inverse() {
        let x = Z24::zeta_pow(5).add(&Z24::from_ratio(3, 7));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), <Z24 as Field>::one());
        assert!(<Z24 as Field>::zero().inv().is_none());
    }

    #[test]
    fn rank_examples() {
        let id3: Mat<Qi> = Mat::identity(3);
        assert_eq!(id3.rank_exact(), 3);
        let z: Mat<Qi> = Mat::zero(5, 7);
        assert_eq!(z.rank_exact(), 0);
        // [[1, i], [i, -1]] has rank 1: row2 = i * row1.
        let m = Mat::from_rows(vec![
            vec![qi(1, 0), qi(0, 1)],
            vec![qi(0, 1), qi(-1, 0)],
        ]);
        assert_eq!(m.rank_exact(), 1);
        assert_eq!(m.rank_with_tol(1e-9), 1);
    }

    #[test]
    fn null_space_examples() {
        let id: Mat<Qi> = Mat::identity(4);
        assert!(id.null_space().is_empty());
        let z: Mat<Qi> = Mat::zero(1, 4);
        assert_eq!(z.null_space().len(), 4);
        let m = Mat::from_rows(vec![vec![qi(1, 0), qi(-1, 0)]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![qi(1, 0), qi(1, 0)]);
        // Exact re-verification M v = 0.
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn rank_nullity() {
        let m: Mat<Qi> = Mat::from_rows(vec![
            vec![qi(1, 0), qi(2, 0), qi(3, 0), qi(4, 1)],
            vec![qi(2, 0), qi(4, 0), qi(6, 0), qi(8, 2)],
            vec![qi(0, 1), qi(0, 0), qi(1, 0), qi(0, 0)],
        ]);
        assert_eq!(m.rank_exact() + m.null_space().len(), m.cols);
        for v in m.null_space() {
            assert!(m.mul_vec(&v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn span_solver_roundtrip() {
        let basis: Mat<Qi> = Mat::from_rows(vec![
            vec![qi(1, 0), qi(1, 0), qi(0, 0)],
            vec![qi(0, 0), qi(1, 0), qi(0, 1)],
        ]);
        let solver = SpanSolver::new(&basis);
        let w = vec![qi(2, 0), qi(5, 0), qi(0, 3)];
        let c = solver.coords(&w).unwrap();
        assert_eq!(c, vec![qi(2, 0), qi(3, 0)]);
        assert!(solver.coords(&[qi(0, 0), qi(0, 0), qi(1, 0)]).is_none());
    }

    #[test]
    fn scalar_dynamic_ops() {
        let a = Scalar::Qi(qi(1, 2));
        let b = Scalar::Qi(qi(0, 1));
        assert_eq!(a.mul(&b).unwrap(), Scalar::Qi(qi(-2, 1)));
        let c = Scalar::F64(C64::new(1.0, 0.0));
        assert!(matches!(
            a.add(&c),
            Err(ScalarError::BackendMismatch("qi", "f64"))
        ));
        assert!(matches!(
            a.div(&Scalar::Qi(<Qi as Field>::zero())),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn literal_roundtrip() {
        for s in [
            Scalar::Qi(Qi::new(ratio(-3, 4), ratio(5, 7))),
            Scalar::Qi(qi(0, -2)),
            Scalar::Qi(qi(9, 0)),
            Scalar::Z24(Z24::zeta_pow(11).add(&Z24::from_ratio(-2, 3))),
            Scalar::F64(C64::new(-0.125, 3.5e-3)),
            Scalar::F64(C64::new(2.0, 0.0)),
        ] {
            let lit = s.literal();
            let back = Scalar::parse(s.backend(), &lit).unwrap();
            assert_eq!(back, s, "literal {lit}");
        }
    }
}
