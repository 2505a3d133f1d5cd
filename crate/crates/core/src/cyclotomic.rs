//! Exact scalars in cyclotomic fields `Q(z_N)`, `z_N = exp(2 pi i / N)`.
//!
//! Values are stored in the group ring `Q[x]/(x^N - 1)`; equality and zero
//! tests reduce modulo the cyclotomic polynomial `Phi_N`. Rationals live at
//! order 1, Gaussian rationals at order 4, and roots-of-unity observables of
//! size `k` at order `k`. Mixed orders are lifted to their lcm.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self { order: 1, coeffs: vec![q] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `z_order^power`.
    pub fn root_of_unity(order: usize, power: usize) -> Self {
        assert!(order >= 1);
        let mut coeffs = vec![BigRational::zero(); order];
        coeffs[power % order] = BigRational::one();
        Self { order, coeffs }
    }

    /// `re + im * i` with both parts exact.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            return Self::from_rational(re);
        }
        let mut coeffs = vec![BigRational::zero(); 4];
        coeffs[0] = re;
        coeffs[1] = im;
        Self { order: 4, coeffs }
    }

    /// Exact value of a finite double (every double is a dyadic rational).
    pub fn from_f64_exact(re: f64, im: f64) -> Option<Self> {
        Some(Self::gaussian(BigRational::from_float(re)?, BigRational::from_float(im)?))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn lift(&self, order: usize) -> Self {
        if order == self.order {
            return self.clone();
        }
        debug_assert_eq!(order % self.order, 0);
        let step = order / self.order;
        let mut coeffs = vec![BigRational::zero(); order];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c.clone();
        }
        Self { order, coeffs }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let order = a.order.lcm(&b.order);
        (a.lift(order), b.lift(order))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugate: `z^j -> z^{-j}`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut coeffs = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - j) % n] = c.clone();
        }
        Self { order: n, coeffs }
    }

    /// `self^p` for `p >= 0`.
    pub fn pow(&self, p: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..p {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients in the power basis `1, z, ..., z^{phi(N)-1}` of `Q(z_N)`.
    pub fn canonical(&self) -> Vec<BigRational> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut rem: Vec<BigRational> = self.coeffs.clone();
        for top in (deg..rem.len()).rev() {
            let lead = rem[top].clone();
            if lead.is_zero() {
                continue;
            }
            // Phi is monic.
            for (i, p) in phi.iter().enumerate() {
                let idx = top - deg + i;
                rem[idx] -= &lead * BigRational::from_integer(p.clone());
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    /// The rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.canonical();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// `|self|^2` as an element of the real subfield.
    pub fn abs_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Certified comparison `|self| <= bound`. Returns `None` only when the two
    /// sides are too close to separate in double precision and not exactly equal.
    pub fn abs_le(&self, bound: &BigRational) -> Option<bool> {
        if bound.is_negative() {
            return Some(false);
        }
        let norm = self.abs_sqr();
        let target = bound * bound;
        if let Some(q) = norm.as_rational() {
            return Some(q <= target);
        }
        let canon = norm.canonical();
        let n = norm.order as f64;
        let mut approx = 0.0;
        let mut scale = 0.0;
        for (j, c) in canon.iter().enumerate() {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            approx += cf * (2.0 * PI * j as f64 / n).cos();
            scale += cf.abs();
        }
        let t = target.to_f64().unwrap_or(f64::INFINITY);
        let err = 1e-12 * (scale + t.abs()) + f64::MIN_POSITIVE;
        match approx.partial_cmp(&t)? {
            Ordering::Less if t - approx > err => Some(true),
            Ordering::Greater if approx - t > err => Some(false),
            _ => None,
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic { order: a.order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic { order: a.order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.order;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                coeffs[(i + j) % n] += x * y;
            }
        }
        Cyclotomic { order: n, coeffs }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        let terms: Vec<(usize, &BigRational)> =
            canon.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (j, c)) in terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -(*c).clone()) } else { ("+", (*c).clone()) };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (j, self.order) {
                (0, _) => write!(f, "{mag}")?,
                (1, 4) => write!(f, "{mag}*i")?,
                _ => write!(f, "{mag}*z{}^{j}", self.order)?,
            }
        }
        Ok(())
    }
}

/// Integer coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient of `num` by a monic divisor.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let lead = rem[i + dd].clone();
        for (j, c) in den.iter().enumerate() {
            rem[i + j] -= &lead * c;
        }
        q[i] = lead;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}
