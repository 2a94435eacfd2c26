//! Rendering of polynomials.
//!
//! Plain mode emits an expression the parser accepts back. Pretty mode is
//! for reports only: it factors common content and recognises `p*conj(p)` as
//! `|p|^2` and conjugate term pairs as `2*Re(...)`.

use super::gauss::GaussianRational;
use super::poly::{Monomial, Scalar};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

impl Scalar {
    pub fn render_plain(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms_desc().into_iter().enumerate() {
            let (neg, mag) = split_sign(&c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&plain_term(self, &m, &mag));
        }
        out
    }

    pub fn render_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (rat, mono, rest) = self.extract_content();
        let groups = group_terms(&rest);
        let mut body = String::new();
        for (k, g) in groups.iter().enumerate() {
            if k == 0 {
                if g.neg {
                    body.push('-');
                }
            } else {
                body.push_str(if g.neg { " - " } else { " + " });
            }
            body.push_str(&g.text);
        }
        let mut prefix = String::new();
        if !rat.is_one() {
            prefix.push_str(&format!("({})", fmt_rat(&rat)));
        }
        if !mono.is_unit() {
            if !prefix.is_empty() {
                prefix.push('*');
            }
            prefix.push_str(&pretty_monomial(self, &mono));
        }
        if prefix.is_empty() {
            body
        } else if groups.len() == 1 && !groups[0].neg {
            format!("{prefix}*{body}")
        } else {
            format!("{prefix}*({body})")
        }
    }

    fn terms_desc(&self) -> Vec<(Monomial, GaussianRational)> {
        let mut v: Vec<_> = self.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.reverse();
        v
    }

    /// Splits off the monomial gcd and the positive rational content.
    fn extract_content(&self) -> (BigRational, Monomial, Scalar) {
        let mono = self.content_monomial();
        let mut nums: Vec<BigInt> = Vec::new();
        let mut dens: Vec<BigInt> = Vec::new();
        for (_, c) in self.terms() {
            for part in [c.re(), c.im()] {
                if !part.is_zero() {
                    nums.push(part.numer().abs());
                    dens.push(part.denom().clone());
                }
            }
        }
        let num = nums.into_iter().fold(BigInt::zero(), |a, b| a.gcd(&b));
        let den = dens.into_iter().fold(BigInt::one(), |a, b| a.lcm(&b));
        let rat = if num.is_zero() { BigRational::one() } else { BigRational::new(num, den) };
        let scale = GaussianRational::from_rational(rat.clone()).inv().unwrap();
        let rest = Scalar::from_terms(
            self.params().clone(),
            self.terms().map(|(m, c)| (m.div(&mono), c * &scale)).collect(),
        );
        (rat, mono, rest)
    }
}

fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    let neg = c.re().is_negative() || (c.re().is_zero() && c.im().is_negative());
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn plain_term(s: &Scalar, m: &Monomial, mag: &GaussianRational) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &s.params().indets()[k].display;
        if e == 1 {
            factors.push(name.clone());
        } else {
            factors.push(format!("{name}^{e}"));
        }
    }
    if factors.is_empty() {
        return mag.to_string();
    }
    let vars = factors.join("*");
    if mag.is_one() {
        vars
    } else {
        format!("{}*{}", mag, vars)
    }
}

/// Renders a monomial with `p*conj(p)` pairs collapsed to `|p|^{2k}`.
fn pretty_monomial(s: &Scalar, m: &Monomial) -> String {
    let indets = s.params().indets();
    let mut rem = m.0.clone();
    let mut factors: Vec<String> = Vec::new();
    for k in 0..rem.len() {
        let cj = indets[k].conj;
        if cj > k {
            let bal = rem[k].min(rem[cj]);
            if bal > 0 {
                rem[k] -= bal;
                rem[cj] -= bal;
                let name = &indets[k].display;
                factors.push(format!("|{}|^{}", name, 2 * bal));
            }
        }
    }
    for (k, &e) in rem.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &indets[k].display;
        if e == 1 {
            factors.push(name.clone());
        } else {
            factors.push(format!("{name}^{e}"));
        }
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

fn conj_monomial(s: &Scalar, m: &Monomial) -> Monomial {
    let indets = s.params().indets();
    let mut e = vec![0u16; m.0.len()];
    for (k, &exp) in m.0.iter().enumerate() {
        e[indets[k].conj] += exp;
    }
    Monomial(e)
}

struct Group {
    neg: bool,
    text: String,
}

fn group_terms(s: &Scalar) -> Vec<Group> {
    let mut consumed: Vec<Monomial> = Vec::new();
    let mut groups = Vec::new();
    for (m, c) in s.terms_desc() {
        if consumed.contains(&m) {
            continue;
        }
        let mc = conj_monomial(s, &m);
        if mc != m && !consumed.contains(&mc) && s.coeff(&mc) == c.conj() {
            consumed.push(mc);
            let (neg, mag) = split_sign(&c);
            let inner = pretty_term(s, &m, &mag);
            groups.push(Group { neg, text: format!("2*Re({inner})") });
            continue;
        }
        let (neg, mag) = split_sign(&c);
        groups.push(Group { neg, text: pretty_term(s, &m, &mag) });
    }
    groups
}

fn pretty_term(s: &Scalar, m: &Monomial, mag: &GaussianRational) -> String {
    if m.is_unit() {
        return mag.to_string();
    }
    let vars = pretty_monomial(s, m);
    if mag.is_one() {
        vars
    } else {
        format!("{}*{}", mag, vars)
    }
}

#[cfg(test)]
mod tests {
    use crate::scalar::params::{ParamSet, Parameter};
    use crate::scalar::parse::parse_scalar;

    #[test]
    fn pretty_groups_conjugate_pairs_and_moduli() {
        let set = ParamSet::new(vec![
            Parameter::real("t2"),
            Parameter::real("lambda"),
            Parameter::real("rho"),
            Parameter::complex("D"),
            Parameter::complex("B"),
        ])
        .unwrap();
        let p = parse_scalar(&set, "(1/2)*t2*(lambda^2 + rho^2 - D - conj(D))").unwrap();
        assert_eq!(p.render_pretty(), "(1/2)*t2*(lambda^2 + rho^2 - 2*Re(D))");
        let q = parse_scalar(&set, "(1/2)*t2*(rho^2 + B*conj(B))").unwrap();
        assert_eq!(q.render_pretty(), "(1/2)*t2*(rho^2 + |B|^2)");
    }

    #[test]
    fn plain_rendering_is_stable_for_constants() {
        let set = ParamSet::empty();
        let z = parse_scalar(&set, "0").unwrap();
        assert_eq!(z.render_plain(), "0");
        let c = parse_scalar(&set, "-3/2 + i").unwrap();
        assert_eq!(c.render_plain(), "-(3/2-i)");
        assert_eq!(parse_scalar(&set, &c.render_plain()).unwrap(), c);
    }
}
