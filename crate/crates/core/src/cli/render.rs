//! Canonical text forms: increasing degree, `p/q` rationals, explicit `^`.

use num_traits::{One, Signed, Zero};

use crate::algebra::{LambdaPoly, Rational, XPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Plain,
    Latex,
}

impl Notation {
    fn lambda(self) -> &'static str {
        match self {
            Self::Plain => "λ",
            Self::Latex => "\\lambda",
        }
    }

    fn power(self, var: &str, k: usize) -> String {
        match (self, k) {
            (_, 0) => String::new(),
            (_, 1) => var.to_string(),
            (Self::Plain, _) => format!("{var}^{k}"),
            (Self::Latex, _) => format!("{var}^{{{k}}}"),
        }
    }

    fn join(self, coeff: &str, var: &str) -> String {
        match (coeff.is_empty(), var.is_empty(), self) {
            (true, _, _) => var.to_string(),
            (_, true, _) => coeff.to_string(),
            (false, false, Self::Plain) => format!("{coeff}{var}"),
            (false, false, Self::Latex) => format!("{coeff} {var}"),
        }
    }
}

/// A rational in canonical form: `3`, `-1/2`, or `\frac{1}{2}`.
pub fn rational(r: &Rational, notation: Notation) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let m = r.abs();
    match notation {
        _ if m.is_integer() => format!("{sign}{}", m.numer()),
        Notation::Plain => format!("{sign}{}/{}", m.numer(), m.denom()),
        Notation::Latex => format!("{sign}\\frac{{{}}}{{{}}}", m.numer(), m.denom()),
    }
}

/// A nonzero term as sign plus unsigned text.
struct Term {
    negative: bool,
    text: String,
}

fn join_terms(terms: Vec<Term>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        match (i, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&t.text);
    }
    out
}

/// Unsigned rational magnitude used as a multiplier of `var`.
fn multiplier(m: &Rational, notation: Notation) -> String {
    if m.is_one() {
        String::new()
    } else if m.is_integer() || notation == Notation::Latex {
        rational(m, notation)
    } else {
        format!("({})", rational(m, notation))
    }
}

fn lambda_terms(p: &LambdaPoly, notation: Notation) -> Vec<Term> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let var = notation.power(notation.lambda(), k);
            let m = c.abs();
            let text = if k == 0 {
                rational(&m, notation)
            } else {
                notation.join(&multiplier(&m, notation), &var)
            };
            Term {
                negative: c.is_negative(),
                text,
            }
        })
        .collect()
}

pub fn lambda_poly(p: &LambdaPoly, notation: Notation) -> String {
    join_terms(lambda_terms(p, notation))
}

pub fn x_poly(p: &XPoly, notation: Notation) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let var = notation.power("x", k);
            let mut inner = lambda_terms(c, notation);
            if inner.len() == 1 {
                let t = inner.remove(0);
                let coeff = if k > 0 && t.text == "1" { String::new() } else { t.text };
                let coeff = match notation {
                    Notation::Plain if k > 0 && coeff.contains('/') && !coeff.starts_with('(') => format!("({coeff})"),
                    _ => coeff,
                };
                Term {
                    negative: t.negative,
                    text: notation.join(&coeff, &var),
                }
            } else {
                let body = join_terms(inner);
                let coeff = match notation {
                    Notation::Plain => format!("({body})"),
                    Notation::Latex => format!("\\left({body}\\right)"),
                };
                Term {
                    negative: false,
                    text: if k == 0 { body } else { notation.join(&coeff, &var) },
                }
            }
        })
        .collect();
    join_terms(terms)
}

fn term_count(p: &XPoly) -> usize {
    p.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().filter(|r| !r.is_zero()).count())
        .sum()
}

/// A quotient `num / den`; the denominator is omitted when it is 1.
pub fn ratio(num: &XPoly, den: &XPoly, notation: Notation) -> String {
    if den.is_one_poly() {
        return x_poly(num, notation);
    }
    match notation {
        Notation::Plain => {
            let wrap = |p: &XPoly| {
                let s = x_poly(p, notation);
                if term_count(p) > 1 {
                    format!("({s})")
                } else {
                    s
                }
            };
            format!("{} / {}", wrap(num), wrap(den))
        }
        Notation::Latex => format!("\\frac{{{}}}{{{}}}", x_poly(num, notation), x_poly(den, notation)),
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for XPoly {
    fn is_one_poly(&self) -> bool {
        *self == XPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Poly};
    use crate::families::{bel_deg_second, bell_deg, bernoulli_deg};

    fn lp(c: &[Rational]) -> LambdaPoly {
        Poly::new(c.to_vec())
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&int(3), Notation::Plain), "3");
        assert_eq!(rational(&rat(-1, 2), Notation::Plain), "-1/2");
        assert_eq!(rational(&rat(-1, 2), Notation::Latex), "-\\frac{1}{2}");
    }

    #[test]
    fn bell_rows() {
        assert_eq!(x_poly(&bell_deg(0), Notation::Plain), "1");
        assert_eq!(x_poly(&bell_deg(1), Notation::Plain), "x");
        assert_eq!(x_poly(&bell_deg(2), Notation::Plain), "x + (1 - λ)x^2");
        assert_eq!(
            x_poly(&bell_deg(2), Notation::Latex),
            "x + \\left(1 - \\lambda\\right) x^{2}"
        );
    }

    #[test]
    fn lambda_polys() {
        assert_eq!(lambda_poly(&bernoulli_deg(2), Notation::Plain), "1/6 - (1/6)λ^2");
        assert_eq!(lambda_poly(&LambdaPoly::zero(), Notation::Plain), "0");
        assert_eq!(lambda_poly(&lp(&[int(0), int(-1)]), Notation::Plain), "-λ");
        assert_eq!(
            lambda_poly(&lp(&[int(0), rat(1, 2)]), Notation::Latex),
            "\\frac{1}{2} \\lambda"
        );
    }

    #[test]
    fn single_term_coefficients() {
        let p = Poly::new(vec![lp(&[rat(1, 3)]), lp(&[int(0), int(-2)]), lp(&[rat(-1, 2)])]);
        assert_eq!(x_poly(&p, Notation::Plain), "1/3 - 2λx - (1/2)x^2");
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio(&bell_deg(1), &XPoly::one(), Notation::Plain), "x");
        let b = bel_deg_second(1);
        assert_eq!(ratio(b.num(), b.den(), Notation::Plain), "x / (1 + λx)");
    }
}
