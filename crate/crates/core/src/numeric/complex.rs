//! Rectangular complex enclosures, used only inside the zeta evaluators.

use std::ops::{Add, Mul, Sub};

use super::{Ball, NumericError};

#[derive(Clone, Debug)]
pub(crate) struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let prec = re.prec();
        ComplexBall {
            re,
            im: Ball::from_i64_prec(0, prec),
        }
    }

    /// `e^{iφ}` for a real enclosure `φ`.
    pub fn cis(phi: &Ball) -> Self {
        let (s, c) = phi.sin_cos();
        ComplexBall { re: c, im: s }
    }

    pub fn scale(&self, k: &Ball) -> Self {
        ComplexBall {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn norm_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Upper bound of the modulus.
    pub fn abs_upper(&self) -> f64 {
        let r = self.re.abs_upper_f64();
        let i = self.im.abs_upper_f64();
        crate::numeric::mag::up(r.hypot(i) * (1.0 + 4.0 * f64::EPSILON))
    }

    pub fn checked_div(&self, rhs: &ComplexBall) -> Result<Self, NumericError> {
        let d = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        Ok(ComplexBall {
            re: re.checked_div(&d)?,
            im: im.checked_div(&d)?,
        })
    }

    /// Adds `err` to both component radii.
    pub fn widen(&self, err: f64) -> Self {
        ComplexBall {
            re: self.re.widen(err),
            im: self.im.widen(err),
        }
    }
}

impl<'a> Add<&'a ComplexBall> for &'a ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &'a ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ComplexBall> for &'a ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &'a ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ComplexBall> for &'a ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &'a ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}
