use num_rational::BigRational;

use super::poly::{Poly, XPoly};
use super::{factorial, Ring};

/// `∫₀^∞ p(y) e^{−y} dy` for a polynomial in y with x-polynomial coefficients,
/// evaluated exactly by the moment rule `y^k ↦ k!`.
pub fn gamma_moment(p: &Poly<XPoly>) -> XPoly {
    let mut acc = XPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc.add_assign(&c.scale(&BigRational::from_integer(factorial(k))));
    }
    acc
}
