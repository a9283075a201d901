use crate::charvariety::{sigma_polys, x3_equations, x3_excluded_factors, PretzelParams};
use crate::polycore::{content_primitive, MultiPoly};

fn v(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

fn int(c: i64) -> MultiPoly {
    MultiPoly::int(c)
}

/// Divides out the largest power of `var` dividing every term.
pub fn strip_power(p: &MultiPoly, var: &str) -> MultiPoly {
    let coeffs = p.coefficients_in(var);
    let Some(low) = coeffs.iter().position(|c| !c.is_zero()) else {
        return MultiPoly::zero();
    };
    MultiPoly::from_coefficients(var, &coeffs[low..])
}

/// Substitutes `t = (u² + 1)/u`, multiplies through by `u^deg_t` and strips
/// the leftover power of `u`.
pub fn clear_t(p: &MultiPoly) -> MultiPoly {
    let coeffs = p.coefficients_in("t");
    let d = coeffs.len().saturating_sub(1) as u32;
    let numer = &(&v("u") * &v("u")) + &int(1);
    let u = v("u");
    let mut out = MultiPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &(c * &numer.pow_u(i as u32)) * &u.pow_u(d - i as u32);
        out = &out + &term;
    }
    strip_power(&out, "u")
}

/// `(w + 1)t(σ1 + 2 − λ − t²) − (u + u⁻¹w)(σ1 + 2 − 2t²)`, times `u`.
fn peripheral_equation() -> MultiPoly {
    let [sig1, _, _] = sigma_polys();
    let (t, u, w, l) = (v("t"), v("u"), v("w"), v("lambda"));
    let t2 = &t * &t;
    let s = &sig1 + &int(2);
    let left = &(&(&w + &int(1)) * &t) * &(&(&s - &l) - &t2);
    let right = &(&(&u * &u) + &w) * &(&s - &(&int(2) * &t2));
    &(&u * &left) - &right
}

/// The five polynomials in `(u, w, s1, s2, s3, λ)` whose common zeros over
/// the main component project to the hard part: the four equations of the
/// component and the peripheral equation, with `t = u + u⁻¹` cleared.
pub fn ap_system(params: PretzelParams) -> Vec<MultiPoly> {
    let mut eqs: Vec<MultiPoly> = x3_equations(params).iter().map(clear_t).collect();
    eqs.push(clear_t(&peripheral_equation()));
    eqs.into_iter().map(|p| content_primitive(&p).1).collect()
}

/// Factors that cannot vanish on the main component, rewritten in `u`:
/// `u`, `u² + 1` (that is `t`), and the cleared forms of the component's own
/// excluded factors.
pub fn ap_excluded_factors() -> Vec<MultiPoly> {
    let mut out = vec![v("u")];
    for f in x3_excluded_factors() {
        let g = content_primitive(&clear_t(&f)).1;
        if !g.is_constant() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvariety::delta_poly;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn pp(s: &str) -> MultiPoly {
        content_primitive(&p(s)).1
    }

    #[test]
    fn small_knot_system() {
        let sys = ap_system(PretzelParams::new(0, 0, 1).unwrap());
        assert_eq!(sys.len(), 5);
        assert_eq!(sys[0], pp("lambda - 2 - s1"));
        assert_eq!(sys[1], pp("lambda - 2 - s2"));
        assert_eq!(sys[2], pp("-(s3^2 - s3*lambda + s1 + s2 + s3 - 2)"));
        let kl = p("lambda^2 - (s1 + s2 + s3 + 2)*lambda + s1*s2 + s2*s3 + s3*s1 + 4");
        let ap3 = &(&p("(u^2 + 1)^2") * &kl) - &(&p("u^2") * &delta_poly());
        assert_eq!(sys[3], content_primitive(&ap3).1);
        for q in &sys {
            assert!(!q.has_var("t"));
        }
    }

    #[test]
    fn peripheral_equation_cleared() {
        let sys = ap_system(PretzelParams::new(1, 1, 1).unwrap());
        let expected = pp(
            "(w + 1)*(u^2 + 1)*(u^2*(s1 + s2 + s3 + 2 - lambda) - (u^2 + 1)^2) \
             - (u^2 + w)*(u^2*(s1 + s2 + s3 + 2) - 2*(u^2 + 1)^2)",
        );
        assert_eq!(sys[4], expected);
    }

    #[test]
    fn zero_trace_is_off_the_peripheral_equation() {
        // u = i makes t = 0; with w = -1 the left side vanishes
        use crate::polycore::ComplexVal;
        let ap4 = &ap_system(PretzelParams::new(0, 0, 1).unwrap())[4];
        let i = ComplexVal::new(0.0, 1.0);
        let at = [("u", i), ("w", ComplexVal::new(-1.0, 0.0)), ("s1", 0.3.into()), ("s2", 0.7.into()), ("s3", (-1.1).into()), ("lambda", 2.5.into())];
        assert!(ap4.evaluate(&at).unwrap().norm() > 1e-3);
    }

    #[test]
    fn excluded_factors_in_u() {
        let ex = ap_excluded_factors();
        assert!(ex.contains(&p("u")));
        assert!(ex.contains(&p("u^2 + 1")));
        assert!(ex.contains(&pp("u^2*s1 - u^4 - 1")));
        assert!(ex.contains(&p("s3 - 2")));
    }
}
