use crate::coeff::{format_rational, Coefficient};
use crate::poly::{Context, GradedPoly, Monomial};
use crate::scalar::{Field, Rational};

/// Coefficient printing; parameters print by name.
pub trait CoeffText: Field {
    fn text(&self, params: &[String]) -> String;
}

impl CoeffText for Rational {
    fn text(&self, _: &[String]) -> String {
        format_rational(self)
    }
}

impl CoeffText for Coefficient {
    fn text(&self, params: &[String]) -> String {
        self.format(params)
    }
}

pub fn format_monomial(m: &Monomial, ctx: &Context) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.factors()
        .map(|(v, e)| {
            let n = ctx.name(v);
            if e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text: terms in descending monomial order, reduced fractions,
/// Grassmann factors in canonical order. Re-parses to the same value.
pub fn format_poly<F: CoeffText>(p: &GradedPoly<F>, ctx: &Context) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = if neg { c.neg_ref() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, ctx);
        if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&a.text(ctx.params()));
            if !m.is_one() {
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly;

    #[test]
    fn beta_one_text() {
        let mut c = Context::u2_fields();
        for i in 1..=4 {
            let s = c.add_variable(&format!("Ms{i}"), -1).unwrap();
            c.pair(i - 1, s).unwrap();
        }
        let b1 = parse_poly("M2*Ms3 - M3*Ms2", &c).unwrap();
        assert_eq!(format_poly(&b1, &c), "M2*Ms3 - M3*Ms2");
        assert_eq!(format_poly(&GradedPoly::<Coefficient>::zero(), &c), "0");
    }

    #[test]
    fn parametric_round_trip() {
        let mut c = Context::u2_fields();
        c.add_parameter("a1").unwrap();
        c.add_parameter("a2").unwrap();
        for s in [
            "a2/(2*a1)*M1 - 1/3*M2^2",
            "(a1 + a2)*M1*M4 - a1",
            "(-a1 + a2)/(a1*a2 + 1)*M3",
            "-M1 + 7/2",
        ] {
            let p = parse_poly(s, &c).unwrap();
            let t = format_poly(&p, &c);
            assert_eq!(parse_poly(&t, &c).unwrap(), p, "{s} -> {t}");
        }
    }
}
