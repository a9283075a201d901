use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Rational};

/// Splits `p = content · primitive` where `primitive` has coprime integer
/// coefficients and a positive leading coefficient; the sign lives in the
/// content. The zero polynomial maps to `(0, 0)`.
pub fn content_primitive(p: &MultiPoly) -> (Rational, MultiPoly) {
    if p.is_zero() {
        return (Rational::zero(), MultiPoly::zero());
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        if !num_gcd.is_one() {
            num_gcd = num_gcd.gcd(c.numer());
        }
        den_lcm = den_lcm.lcm(c.denom());
    }
    if p.leading_coefficient().is_negative() {
        num_gcd = -num_gcd;
    }
    if den_lcm.is_one() {
        // integer content: divide exactly, no rational normalization needed
        let primitive = p.map_coefficients(|c| Rational::new_raw(c.numer() / &num_gcd, BigInt::one()));
        return (Rational::from_integer(num_gcd), primitive);
    }
    let content = Rational::new(num_gcd, den_lcm);
    let primitive = p.scale(&content.recip());
    (content, primitive)
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    content_primitive(p).1
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MultiPoly, var: &str) -> MultiPoly {
    content_in_with(p, var, gcd)
}

fn content_in_with(p: &MultiPoly, var: &str, g: fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    // smallest coefficients first: the gcd usually collapses early
    let mut coeffs = p.coefficients_in(var);
    coeffs.sort_by_key(|c| c.num_terms());
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        acc = g(&acc, c);
        if acc.is_constant() {
            return MultiPoly::one();
        }
    }
    acc
}

#[cfg(test)]
fn primitive_in(p: &MultiPoly, var: &str) -> MultiPoly {
    let c = content_in_with(p, var, gcd_prs);
    normalize(&p.div_exact(&c).expect("content divides its polynomial"))
}

/// Greatest common divisor over ℚ, normalized to a primitive integer
/// polynomial with positive leading coefficient.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    super::modular::gcd_modular(a, b)
}

#[cfg(test)]
/// Recursive primitive remainder sequence in the first variable present.
/// Slow on anything sizeable; kept as an independent reference.
pub(crate) fn gcd_prs(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let var = {
        let mut all: Vec<&String> = a.vars().iter().chain(b.vars()).collect();
        all.sort_by(|x, y| super::compare_vars(x, y));
        all[0].clone()
    };
    if !a.has_var(&var) {
        return gcd_prs(a, &content_in_with(b, &var, gcd_prs));
    }
    if !b.has_var(&var) {
        return gcd_prs(&content_in_with(a, &var, gcd_prs), b);
    }
    let ca = content_in_with(a, &var, gcd_prs);
    let cb = content_in_with(b, &var, gcd_prs);
    let c = gcd_prs(&ca, &cb);
    let pa = normalize(&a.div_exact(&ca).unwrap());
    let pb = normalize(&b.div_exact(&cb).unwrap());
    let (mut f, mut g) = if pa.degree_in(&var) >= pb.degree_in(&var) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = f.pseudo_rem(&g, &var);
        if r.is_zero() {
            break;
        }
        if !r.has_var(&var) {
            g = MultiPoly::one();
            break;
        }
        f = g;
        g = primitive_in(&r, &var);
    }
    normalize(&(&c * &primitive_in(&g, &var)))
}

/// `p / gcd(p, ∂p/∂var)`, content-normalized. Factors free of `var` are
/// removed along with repeated ones, since they divide the derivative too.
pub fn square_free(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let d = p.derivative(var);
    if d.is_zero() {
        return MultiPoly::one();
    }
    let g = gcd(p, &d);
    normalize(&p.div_exact(&g).expect("gcd divides its argument"))
}

/// Yun's square-free decomposition of the `var`-primitive part of `p`:
/// pairs `(f_i, i)` with `p = content · Π f_i^i`, each `f_i` square-free and
/// pairwise coprime. Factors of `p` free of `var` are left out.
pub fn square_free_decomposition(p: &MultiPoly, var: &str) -> Vec<(MultiPoly, u32)> {
    if p.degree_in(var) == 0 {
        return vec![];
    }
    let pp = p.div_exact(&content_in(p, var)).expect("content divides its polynomial");
    let d = pp.derivative(var);
    let c = gcd(&pp, &d);
    let mut w = pp.div_exact(&c).expect("gcd divides its argument");
    let mut y = d.div_exact(&c).expect("gcd divides its argument");
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree_in(var) > 0 {
        let z = &y - &w.derivative(var);
        let g = gcd(&w, &z);
        if g.degree_in(var) > 0 {
            out.push((normalize(&g), i));
        }
        w = w.div_exact(&g).expect("gcd divides its argument");
        y = z.div_exact(&g).expect("gcd divides its argument");
        i += 1;
    }
    out
}

/// Removes repeated factors that involve `var` while keeping the `var`-free
/// content intact. Used between elimination stages, where dropping a
/// variable-free factor would lose solutions.
pub fn square_free_keep_content(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.degree_in(var) <= 1 || specialized_gcd_degree(p, &p.derivative(var), var) == Some(0) {
        return normalize(p);
    }
    let c = content_in(p, var);
    let pp = p.div_exact(&c).unwrap();
    normalize(&(&c * &square_free(&pp, var)))
}

/// Degree in `var` of gcd(p, q) after substituting fixed integers for every
/// other variable. An upper bound for the true degree whenever the leading
/// coefficients survive the substitution; `None` if they do not.
fn specialized_gcd_degree(p: &MultiPoly, q: &MultiPoly, var: &str) -> Option<u32> {
    const POINTS: [i64; 8] = [7, -11, 13, 5, -3, 17, 19, -23];
    let mut others: Vec<String> = p.vars().iter().chain(q.vars()).filter(|v| *v != var).cloned().collect();
    others.sort();
    others.dedup();
    let values: Vec<(&str, Rational)> = others
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), Rational::from_integer(BigInt::from(POINTS[i % POINTS.len()] + i as i64 / 8))))
        .collect();
    let ps = p.substitute_values(&values);
    let qs = q.substitute_values(&values);
    if ps.degree_in(var) != p.degree_in(var) || qs.degree_in(var) != q.degree_in(var) {
        return None;
    }
    Some(gcd(&ps, &qs).degree_in(var))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn yun_decomposition() {
        let f = p("(x - y)^3*(x^2 + y)*(x + 1)^2*(y + 2)^2");
        let mut dec = square_free_decomposition(&f, "x");
        dec.sort_by_key(|(_, m)| *m);
        assert_eq!(dec, vec![(p("x^2 + y"), 1), (p("x + 1"), 2), (p("x - y"), 3)]);
        assert!(square_free_decomposition(&p("y^2 + 1"), "x").is_empty());
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn content_primitive_examples() {
        assert_eq!(content_primitive(&p("6*x+4")), (q(2, 1), p("3*x+2")));
        assert_eq!(content_primitive(&p("x/2")), (q(1, 2), p("x")));
        assert_eq!(content_primitive(&p("-3*x^2")), (q(-3, 1), p("x^2")));
        assert_eq!(content_primitive(&MultiPoly::zero()), (q(0, 1), MultiPoly::zero()));
        assert_eq!(content_primitive(&p("x/6 + y/4")), (q(1, 12), p("2*x + 3*y")));
    }

    #[test]
    fn gcd_multivariate() {
        let f = p("(x + y)^2 * (x - 2*y + 1)");
        let g = p("(x + y) * (x^2 + y^3)");
        assert_eq!(gcd(&f, &g), p("x + y"));
        assert_eq!(gcd(&p("2*x*y"), &p("4*y^2")), p("y"));
        assert_eq!(gcd(&p("x + 1"), &p("x - 1")), MultiPoly::one());
        assert_eq!(gcd(&MultiPoly::zero(), &p("-2*x")), p("x"));
    }

    #[test]
    fn gcd_with_variable_free_content() {
        let f = p("(y^2 + 1) * (x - y)");
        let g = p("(y^2 + 1) * (x + y)");
        assert_eq!(gcd(&f, &g), p("y^2 + 1"));
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(square_free(&p("(x-1)^2*(x+2)"), "x"), p("(x-1)*(x+2)"));
        assert_eq!(square_free(&p("x^3"), "x"), p("x"));
        assert_eq!(square_free(&p("x^2+1"), "x"), p("x^2+1"));
        assert_eq!(square_free(&p("(x*y - 1)^3*(y+3)"), "x"), p("x*y - 1"));
    }

    #[test]
    fn keep_content_variant_retains_free_factors() {
        let f = p("(y+3)^2*(x*y - 1)^3*(x + y)");
        assert_eq!(square_free_keep_content(&f, "x"), p("(y+3)^2*(x*y - 1)*(x + y)"));
        let g = p("(x+y)*(x-y)*(y-2)^2");
        assert_eq!(square_free_keep_content(&g, "x"), g);
    }
}
