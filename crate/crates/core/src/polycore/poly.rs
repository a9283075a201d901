use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{compare_vars, Monomial};
use super::{ComplexVal, PolyError, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The variable list holds exactly the variables that occur, sorted in the
/// canonical order, and no stored coefficient is zero. Equality is therefore
/// structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort_by(|x, y| compare_vars(x, y));
    out.dedup();
    out
}

fn index_map(from: &[String], to: &[String]) -> Vec<usize> {
    from.iter()
        .map(|v| to.iter().position(|x| x == v).expect("variable missing from union"))
        .collect()
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Fall back to a bit-length estimate for very large magnitudes.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        Rational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        Rational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

// Ratio arithmetic normalizes through a gcd even when both denominators are
// 1, and the binary gcd against 1 is quadratic in the bit length. Integer
// coefficients are the common case after content removal, so skip it there.
#[inline]
pub(crate) fn q_mul(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        Rational::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

#[inline]
pub(crate) fn q_add_assign(x: &mut Rational, c: &Rational, negate: bool) {
    if x.denom().is_one() && c.denom().is_one() {
        let n = if negate { x.numer() - c.numer() } else { x.numer() + c.numer() };
        *x = Rational::new_raw(n, BigInt::one());
    } else if negate {
        *x -= c;
    } else {
        *x += c;
    }
}

#[inline]
fn q_div(a: &Rational, b: &Rational) -> Rational {
    if a.denom().is_one() && b.denom().is_one() {
        let (q, r) = a.numer().div_rem(b.numer());
        if r.is_zero() {
            return if b.numer().is_negative() && q.is_zero() {
                Rational::zero()
            } else {
                Rational::new_raw(q, BigInt::one())
            };
        }
    }
    a / b
}

impl MultiPoly {
    /// Builds a polynomial from parts, dropping zero coefficients and unused variables.
    /// `vars` must already be in canonical order and free of duplicates.
    pub(crate) fn from_parts(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let new_vars = keep.iter().map(|&i| vars[i].clone()).collect();
        terms = terms
            .into_iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        MultiPoly { vars: new_vars, terms }
    }

    /// Builds a polynomial from `(coefficient, [(variable, exponent)])` pairs.
    pub fn from_terms<S: AsRef<str>>(terms: &[(Rational, Vec<(S, u32)>)]) -> Self {
        let mut out = MultiPoly::zero();
        for (c, powers) in terms {
            let mut t = MultiPoly::constant(c.clone());
            for (v, e) in powers {
                t = &t * &MultiPoly::var(v.as_ref()).pow_u(*e);
            }
            out = &out + &t;
        }
        out
    }

    pub fn zero() -> Self {
        MultiPoly { vars: vec![], terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(vec![]), c);
        }
        MultiPoly { vars: vec![], terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn embed(&self, target: &[String]) -> BTreeMap<Monomial, Rational> {
        if self.vars == target {
            return self.terms.clone();
        }
        let map = index_map(&self.vars, target);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn add_impl(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let vars = union_vars(&self.vars, &other.vars);
        let mut terms = self.embed(&vars);
        for (m, c) in other.embed(&vars) {
            let entry = terms.entry(m).or_insert_with(Rational::zero);
            q_add_assign(entry, &c, negate);
        }
        MultiPoly::from_parts(vars, terms)
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let prod = q_mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(x) => q_add_assign(x, &prod, false),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        MultiPoly::from_parts(vars, acc.into_iter().collect())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), q_mul(x, c))).collect(),
        }
    }

    /// Applies `f` to every coefficient; `f` must not produce zeros.
    pub(crate) fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub(crate) fn pow_u(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self^k`; negative exponents have no meaning in the polynomial ring.
    pub fn pow(&self, k: i64) -> Result<MultiPoly, PolyError> {
        if k < 0 {
            return Err(PolyError::NegativePower(k));
        }
        Ok(self.pow_u(k as u32))
    }

    /// Coefficients of `self` as a polynomial in `var`; index is the degree.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(idx) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let d = e[idx] as usize;
            e[idx] = 0;
            parts[d].insert(Monomial(e), c.clone());
        }
        parts
            .into_iter()
            .map(|t| MultiPoly::from_parts(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients(var: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(idx) = self.var_index(var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[idx] -= 1;
            terms.insert(Monomial(n), q_mul(c, &Rational::from_integer(BigInt::from(e))));
        }
        MultiPoly::from_parts(self.vars.clone(), terms)
    }

    /// Replaces `var` by `value` everywhere. Substituting an absent variable is the identity.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        if !self.has_var(var) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Replaces several variables at once with numeric rationals.
    pub fn substitute_values(&self, values: &[(&str, Rational)]) -> MultiPoly {
        values.iter().fold(self.clone(), |p, (v, x)| {
            p.substitute(v, &MultiPoly::constant(x.clone()))
        })
    }

    /// Exact division; fails unless `divisor` divides `self` in the polynomial ring.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        if let Some(c) = divisor.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        if divisor.vars.iter().any(|v| !self.has_var(v)) {
            return if self.is_zero() { Ok(MultiPoly::zero()) } else { Err(PolyError::InexactDivision) };
        }
        let vars = self.vars.clone();
        let d = divisor.embed(&vars);
        let (dm, dc) = d.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&dm).ok_or(PolyError::InexactDivision)?;
            let qc = q_div(&c, &dc);
            for (m2, c2) in &d {
                let key = m2.mul(&qm);
                let prod = q_mul(c2, &qc);
                let remove = match rem.get_mut(&key) {
                    Some(x) => {
                        q_add_assign(x, &prod, true);
                        x.is_zero()
                    }
                    None => {
                        rem.insert(key.clone(), -prod);
                        false
                    }
                };
                if remove {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Ok(MultiPoly::from_parts(vars, quot))
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `var`.
    pub(crate) fn pseudo_rem(&self, divisor: &MultiPoly, var: &str) -> MultiPoly {
        let db = divisor.degree_in(var);
        let bc = divisor.coefficients_in(var);
        let lb = bc.last().cloned().unwrap_or_else(MultiPoly::zero);
        let x = MultiPoly::var(var);
        let mut r = self.clone();
        loop {
            let dr = r.degree_in(var);
            if r.is_zero() || dr < db {
                return r;
            }
            let lr = r.coefficients_in(var).pop().unwrap();
            let shift = x.pow_u(dr - db);
            r = &(&r * &lb) - &(&(&lr * &shift) * divisor);
        }
    }

    /// Numeric evaluation by nested Horner schemes, one variable at a time.
    pub fn evaluate(&self, assignment: &[(&str, ComplexVal)]) -> Result<ComplexVal, PolyError> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| *x)
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut flat: Vec<(&[u32], ComplexVal)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.as_slice(), ComplexVal::new(rational_to_f64(c), 0.0)))
            .collect();
        flat.sort_by(|a, b| b.0.cmp(a.0));
        Ok(horner(&flat, 0, &values))
    }

    /// Ascending coefficients in `var` after every other variable has been
    /// given a numeric value.
    pub fn univariate_at(&self, var: &str, assignment: &[(&str, ComplexVal)]) -> Result<Vec<ComplexVal>, PolyError> {
        self.coefficients_in(var).iter().map(|c| c.evaluate(assignment)).collect()
    }

    /// Coefficients as f64 (only sensible when they are moderate in size).
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| rational_to_f64(c).abs()).fold(0.0, f64::max)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Sum of |coefficient|·|monomial value| at a point; the natural scale for residuals.
    pub fn magnitude_at(&self, assignment: &[(&str, ComplexVal)]) -> Result<f64, PolyError> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| x.norm())
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 = m.0.iter().zip(&values).map(|(&e, x)| x.powi(e as i32)).product();
                rational_to_f64(c).abs() * mono
            })
            .sum())
    }

    /// Largest single term magnitude at a point.
    pub fn max_term_at(&self, assignment: &[(&str, ComplexVal)]) -> Result<f64, PolyError> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| x.norm())
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 = m.0.iter().zip(&values).map(|(&e, x)| x.powi(e as i32)).product();
                rational_to_f64(c).abs() * mono
            })
            .fold(0.0, f64::max))
    }
}

fn horner(terms: &[(&[u32], ComplexVal)], level: usize, values: &[ComplexVal]) -> ComplexVal {
    if level == values.len() {
        return terms.iter().map(|(_, c)| *c).sum();
    }
    let x = values[level];
    let mut acc = ComplexVal::new(0.0, 0.0);
    let mut prev_deg: Option<u32> = None;
    let mut start = 0;
    while start < terms.len() {
        let d = terms[start].0[level];
        let mut end = start;
        while end < terms.len() && terms[end].0[level] == d {
            end += 1;
        }
        if let Some(p) = prev_deg {
            acc *= x.powu(p - d);
        }
        acc += horner(&terms[start..end], level + 1, values);
        prev_deg = Some(d);
        start = end;
    }
    if let Some(p) = prev_deg {
        acc *= x.powu(p);
    }
    acc
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("t") * &p("t"), p("t^2"));
        assert_eq!(&p("s1+s2") - &p("s2"), p("s1"));
        assert_eq!(p("t-2").pow(2).unwrap(), p("t^2-4*t+4"));
        assert_eq!(p("t").pow(-1), Err(PolyError::NegativePower(-1)));
    }

    #[test]
    fn cancellation_prunes_variables() {
        let q = &p("x + y") - &p("y");
        assert_eq!(q.vars(), ["x".to_string()]);
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("t^2").substitute("t", &p("s+1")), p("s^2+2*s+1"));
        assert_eq!(p("t").substitute("t", &p("t")), p("t"));
        let kappa = p("tau^2 - t*(s1+s2+s3+2)*tau + t^2*(s1*s2+s2*s3+s3*s1+4)");
        let lam = kappa.substitute("tau", &p("t*lambda"));
        assert_eq!(lam, p("t^2*(lambda^2 - (s1+s2+s3+2)*lambda + s1*s2+s2*s3+s3*s1+4)"));
    }

    #[test]
    fn evaluation_examples() {
        let z = |re, im| ComplexVal::new(re, im);
        assert_eq!(p("t^2-4").evaluate(&[("t", z(2.0, 0.0))]).unwrap(), z(0.0, 0.0));
        let v = p("s1+s2").evaluate(&[("s1", z(1.0, 1.0)), ("s2", z(1.0, -1.0))]).unwrap();
        assert_eq!(v, z(2.0, 0.0));
        assert_eq!(
            p("x*y").evaluate(&[("x", z(1.0, 0.0))]),
            Err(PolyError::MissingVariable("y".into()))
        );
    }

    #[test]
    fn horner_matches_naive_sum() {
        let q = p("3*x^4*y - 2*x^2*y^3 + x*y + 7*y^2 - 5 + x^3");
        let (x, y) = (ComplexVal::new(0.3, -1.1), ComplexVal::new(-0.7, 0.4));
        let naive = 3.0 * x.powu(4) * y - 2.0 * x.powu(2) * y.powu(3) + x * y + 7.0 * y * y - 5.0
            + x.powu(3);
        let h = q.evaluate(&[("x", x), ("y", y)]).unwrap();
        assert!((h - naive).norm() < 1e-12);
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(a.div_exact(&p("x - y")).unwrap(), p("x + y"));
        assert_eq!(a.div_exact(&p("x - 2*y")), Err(PolyError::InexactDivision));
        assert_eq!(p("6*x").div_exact(&p("3")).unwrap(), p("2*x"));
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let q = p("x^2*y + 3*x*y^2 - y + 4");
        let c = q.coefficients_in("x");
        assert_eq!(c, vec![p("4 - y"), p("3*y^2"), p("y")]);
        assert_eq!(MultiPoly::from_coefficients("x", &c), q);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("1 - 2*u + 3*u^2*w").to_string(), "3*u^2*w - 2*u + 1");
        assert_eq!(p("-x/2").to_string(), "-1/2*x");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }
}
