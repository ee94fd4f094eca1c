use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::HpError;

/// Gaussian rational `re + im·i` with both parts reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GQ { re, im }
    }

    pub fn zero() -> Self {
        GQ { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GQ::int(1)
    }

    pub fn i() -> Self {
        GQ { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn int(n: i64) -> Self {
        GQ { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn frac(num: i64, den: i64) -> Self {
        GQ { re: BigRational::new(BigInt::from(num), BigInt::from(den)), im: BigRational::zero() }
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GQ {
            re: BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GQ { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, HpError> {
        if self.is_zero() {
            return Err(HpError::Singular("division by zero".into()));
        }
        let n = self.norm_sq();
        Ok(GQ { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        GQ { re: &self.re * r, im: &self.im * r }
    }

    /// Lowest common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical print: `3/2`, `-i`, `1/2i`, `(1/2-3i)`.
impl fmt::Display for GQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rat(im))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}", im_part(&self.im))
        } else {
            let im = im_part(&self.im);
            let sep = if self.im.is_negative() { "" } else { "+" };
            write!(f, "({}{}{})", fmt_rat(&self.re), sep, im)
        }
    }
}

impl<'a> Add<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn add(self, o: &GQ) -> GQ {
        GQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn sub(self, o: &GQ) -> GQ {
        GQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn mul(self, o: &GQ) -> GQ {
        if self.im.is_zero() && o.im.is_zero() {
            return GQ { re: &self.re * &o.re, im: BigRational::zero() };
        }
        GQ { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl<'a> Div<&'a GQ> for &'a GQ {
    type Output = GQ;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GQ) -> GQ {
        let inv = o.inv().expect("division by zero GQ");
        self * &inv
    }
}

impl Add for GQ {
    type Output = GQ;
    fn add(self, o: GQ) -> GQ {
        &self + &o
    }
}

impl Sub for GQ {
    type Output = GQ;
    fn sub(self, o: GQ) -> GQ {
        &self - &o
    }
}

impl Mul for GQ {
    type Output = GQ;
    fn mul(self, o: GQ) -> GQ {
        &self * &o
    }
}

impl Div for GQ {
    type Output = GQ;
    fn div(self, o: GQ) -> GQ {
        &self / &o
    }
}

impl Neg for GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        GQ { re: -self.re, im: -self.im }
    }
}

impl Neg for &GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        GQ { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GQ> for GQ {
    fn add_assign(&mut self, o: &GQ) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GQ> for GQ {
    fn sub_assign(&mut self, o: &GQ) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl From<i64> for GQ {
    fn from(n: i64) -> Self {
        GQ::int(n)
    }
}
