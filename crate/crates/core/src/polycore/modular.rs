//! Multi-modular resultants and gcds over ℤ.
//!
//! Inputs are cleared of denominators, reduced modulo word-sized primes,
//! evaluated at random points down to univariate problems, interpolated back
//! densely and recombined by Chinese remaindering.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gcd::{content_in, content_primitive};
use super::monomial::{compare_vars, Monomial};
use super::{MultiPoly, PolyError, Rational};

const PRIME_COUNT: usize = 2048;

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^61`, largest first.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 61) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Prime field with elements kept in Montgomery form `aR mod p`, `R = 2^64`.
/// Any `u64 < p` is a valid element, so random points need no conversion.
#[derive(Debug, Clone, Copy)]
struct Fp {
    p: u64,
    /// `-p⁻¹ mod 2^64`
    pinv: u64,
    /// `R² mod p`
    r2: u64,
    /// `R mod p`, the Montgomery form of 1
    one: u64,
}

impl Fp {
    fn new(p: u64) -> Fp {
        debug_assert!(p % 2 == 1 && p < (1 << 62));
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Fp { p, pinv: inv.wrapping_neg(), r2, one: r }
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Inverts every entry with a single field inversion.
    fn batch_inv(self, xs: &mut [u64]) {
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = self.one;
        for &x in xs.iter() {
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv = self.inv(acc);
        for i in (0..xs.len()).rev() {
            let x = xs[i];
            xs[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, x);
        }
    }

    fn from_u64(self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    fn to_u64(self, a: u64) -> u64 {
        self.mul(a, 1)
    }

    fn reduce(self, x: &BigInt) -> u64 {
        self.from_u64(x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

// ---------------------------------------------------------------------------
// univariate arithmetic on coefficient vectors, lowest degree first

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn uni_rem(a: &[u64], b: &[u64], f: Fp) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv_lb = f.inv(b[db]);
    while r.len() > db {
        let dr = r.len() - 1;
        let q = f.mul(r[dr], inv_lb);
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(q, bi));
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd; empty vector for the zero polynomial.
fn uni_gcd(a: &[u64], b: &[u64], f: Fp) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(&x, &y, f);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let il = f.inv(l);
        for c in &mut x {
            *c = f.mul(*c, il);
        }
    }
    x
}

/// Resultant of two polynomials with nonzero leading coefficients.
fn uni_res(a: &[u64], b: &[u64], f: Fp) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = f.one;
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return f.mul(acc, f.pow(b[0], m as u64));
        }
        if m == 0 {
            return f.mul(acc, f.pow(a[0], n as u64));
        }
        let r = uni_rem(&a, &b, f);
        if r.is_empty() {
            return 0;
        }
        let d = r.len() - 1;
        acc = f.mul(acc, f.pow(b[n], (m - d) as u64));
        if (m * n) % 2 == 1 {
            acc = f.neg(acc);
        }
        a = b;
        b = r;
    }
}

/// Newton interpolation of vector-valued samples; returns coefficient
/// vectors `out[e][j]` of `Σ_e out[e] x^e`.
fn interpolate(xs: &[u64], mut dd: Vec<Vec<u64>>, f: Fp) -> Vec<Vec<u64>> {
    let n = xs.len();
    let len = dd.first().map_or(0, Vec::len);
    for i in 1..n {
        let mut invs: Vec<u64> = (i..n).map(|j| f.sub(xs[j], xs[j - i])).collect();
        f.batch_inv(&mut invs);
        for j in (i..n).rev() {
            let inv = invs[j - i];
            let (lo, hi) = dd.split_at_mut(j);
            let prev = &lo[j - 1];
            for (h, &p) in hi[0].iter_mut().zip(prev) {
                *h = f.mul(f.sub(*h, p), inv);
            }
        }
    }
    let mut poly = vec![vec![0u64; len]; n];
    poly[0] = dd[n - 1].clone();
    let mut deg = 0;
    for i in (0..n - 1).rev() {
        // poly = poly * (x - xs[i]) + dd[i]
        for e in (0..=deg).rev() {
            let (lo, hi) = poly.split_at_mut(e + 1);
            let src = &mut lo[e];
            for (t, s) in hi[0].iter_mut().zip(src.iter_mut()) {
                *t = f.add(*t, *s);
                *s = f.neg(f.mul(*s, xs[i]));
            }
        }
        for (s, d) in poly[0].iter_mut().zip(&dd[i]) {
            *s = f.add(*s, *d);
        }
        deg += 1;
    }
    poly
}

// ---------------------------------------------------------------------------
// dense multivariate polynomials mod p; the first variable is the main one
// and the last index runs fastest

#[derive(Debug, Clone)]
struct Dense {
    shape: Vec<usize>,
    c: Vec<u64>,
}

impl Dense {
    fn last_len(&self) -> usize {
        *self.shape.last().unwrap()
    }

    fn eval_last(&self, v: u64, f: Fp) -> Dense {
        let l = self.last_len();
        let c = self
            .c
            .chunks(l)
            .map(|block| block.iter().rev().fold(0, |acc, &x| f.add(f.mul(acc, v), x)))
            .collect();
        Dense { shape: self.shape[..self.shape.len() - 1].to_vec(), c }
    }

    fn stride0(&self) -> usize {
        self.shape[1..].iter().product()
    }

    fn top_nonzero(&self) -> bool {
        let s = self.stride0();
        self.c[(self.shape[0] - 1) * s..].iter().any(|&x| x != 0)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

/// Integral polynomial laid out for repeated reduction modulo primes.
struct IntDense {
    shape: Vec<usize>,
    entries: Vec<(usize, BigInt)>,
}

impl IntDense {
    /// `p` must have integer coefficients; `order` lists every variable of `p`.
    fn new(p: &MultiPoly, order: &[String]) -> IntDense {
        let pos: Vec<usize> = p.vars().iter().map(|v| order.iter().position(|o| o == v).unwrap()).collect();
        let mut shape = vec![1usize; order.len()];
        for (i, v) in p.vars().iter().enumerate() {
            let _ = v;
            shape[pos[i]] = p.terms().map(|(m, _)| m.0[i] as usize).max().unwrap_or(0) + 1;
        }
        let strides = strides(&shape);
        let entries = p
            .terms()
            .map(|(m, c)| {
                let idx = m.0.iter().enumerate().map(|(i, &e)| e as usize * strides[pos[i]]).sum();
                (idx, c.to_integer())
            })
            .collect();
        IntDense { shape, entries }
    }

    fn reduce(&self, f: Fp) -> Dense {
        let mut c = vec![0u64; self.shape.iter().product()];
        for (i, x) in &self.entries {
            c[*i] = f.reduce(x);
        }
        Dense { shape: self.shape.clone(), c }
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

fn fresh_point(rng: &mut ChaCha8Rng, used: &mut HashSet<u64>, f: Fp) -> u64 {
    loop {
        let v = rng.gen_range(0..f.p);
        if used.insert(v) {
            return v;
        }
    }
}

/// Builds a polynomial from a dense integer array over `order`.
fn from_dense(order: &[String], shape: &[usize], coeffs: &[BigInt]) -> MultiPoly {
    let mut canon: Vec<(usize, &String)> = order.iter().enumerate().collect();
    canon.sort_by(|a, b| compare_vars(a.1, b.1));
    let vars: Vec<String> = canon.iter().map(|(_, v)| (*v).clone()).collect();
    let st = strides(shape);
    let mut terms = BTreeMap::new();
    for (idx, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exps: Vec<u32> = canon.iter().map(|(i, _)| ((idx / st[*i]) % shape[*i]) as u32).collect();
        terms.insert(Monomial(exps), Rational::from_integer(c.clone()));
    }
    MultiPoly::from_parts(vars, terms)
}

/// Incremental Chinese remaindering of coefficient images.
struct Crt {
    values: Vec<BigInt>,
    modulus: BigInt,
}

impl Crt {
    /// `image` holds plain residues, not Montgomery forms.
    fn new(image: &[u64], p: u64) -> Crt {
        Crt { values: image.iter().map(|&x| BigInt::from(x)).collect(), modulus: BigInt::from(p) }
    }

    fn add(&mut self, image: &[u64], p: u64) {
        let f = Fp::new(p);
        let m_inv = f.inv(f.reduce(&self.modulus));
        let bp = BigInt::from(p);
        self.values.par_iter_mut().zip(image.par_iter()).for_each(|(x, &r)| {
            let xr = f.reduce(x);
            let k = f.to_u64(f.mul(f.sub(f.from_u64(r), xr), m_inv));
            if k != 0 {
                *x += &self.modulus * BigInt::from(k);
            }
        });
        self.modulus *= bp;
    }

    fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1usize;
        self.values
            .iter()
            .map(|x| if *x > half { x - &self.modulus } else { x.clone() })
            .collect()
    }
}

fn l1_bits(p: &MultiPoly) -> u64 {
    let s: BigInt = p.terms().map(|(_, c)| c.to_integer().abs()).sum();
    s.bits()
}

fn sorted_others(vars: impl Iterator<Item = String>, main: &str) -> Vec<String> {
    let mut v: Vec<String> = vars.filter(|x| x != main).collect();
    v.sort_by(|a, b| compare_vars(a, b));
    v.dedup();
    v
}

// ---------------------------------------------------------------------------
// resultants

fn res_dense(a: &Dense, b: &Dense, bounds: &[usize], f: Fp, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let k = bounds.len();
    if k == 0 {
        return vec![uni_res(&a.c, &b.c, f)];
    }
    let need = bounds[k - 1] + 1;
    let mut used = HashSet::new();
    let mut xs = Vec::with_capacity(need);
    let mut ys = Vec::with_capacity(need);
    while xs.len() < need {
        let v = fresh_point(rng, &mut used, f);
        let av = a.eval_last(v, f);
        let bv = b.eval_last(v, f);
        if !av.top_nonzero() || !bv.top_nonzero() {
            continue;
        }
        ys.push(res_dense(&av, &bv, &bounds[..k - 1], f, rng));
        xs.push(v);
    }
    let coeffs = interpolate(&xs, ys, f);
    let inner = coeffs[0].len();
    let mut out = vec![0u64; inner * need];
    for (e, col) in coeffs.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            out[j * need + e] = x;
        }
    }
    out
}

/// Resultant with respect to `var` by evaluation, interpolation and
/// Chinese remaindering. The number of primes comes from the bound
/// `‖Res‖₁ ≤ ‖p‖₁^deg q · ‖q‖₁^deg p`.
pub fn resultant_modular(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let dp = p.degree_in(var);
    let dq = q.degree_in(var);
    if dp == 0 || dq == 0 {
        return Err(PolyError::DegreeZero { var: var.to_string() });
    }
    let (cp, pp) = content_primitive(p);
    let (cq, qq) = content_primitive(q);
    let others = sorted_others(pp.vars().iter().chain(qq.vars()).cloned(), var);
    let mut order = vec![var.to_string()];
    order.extend(others.iter().cloned());
    let bounds: Vec<usize> = others
        .iter()
        .map(|y| (dq * pp.degree_in(y) + dp * qq.degree_in(y)) as usize)
        .collect();
    let bits = dq as u64 * l1_bits(&pp) + dp as u64 * l1_bits(&qq) + 2;
    let a = IntDense::new(&pp, &order);
    let b = IntDense::new(&qq, &order);
    let mut shape: Vec<usize> = bounds.iter().map(|d| d + 1).collect();
    if shape.is_empty() {
        shape.push(1);
    }

    let mut crt: Option<Crt> = None;
    let batch = rayon::current_num_threads().max(1);
    let mut next = 0;
    while crt.as_ref().map_or(true, |c| c.modulus.bits() <= bits) {
        let chunk = &primes()[next..next + batch];
        next += batch;
        let images: Vec<(u64, Option<Vec<u64>>)> = chunk
            .par_iter()
            .map(|&pr| {
                let f = Fp::new(pr);
                let ad = a.reduce(f);
                let bd = b.reduce(f);
                if !ad.top_nonzero() || !bd.top_nonzero() {
                    return (pr, None);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(pr);
                let img = res_dense(&ad, &bd, &bounds, f, &mut rng);
                (pr, Some(img.into_iter().map(|x| f.to_u64(x)).collect()))
            })
            .collect();
        for (pr, img) in images {
            if let Some(img) = img {
                match crt.as_mut() {
                    None => crt = Some(Crt::new(&img, pr)),
                    Some(c) => c.add(&img, pr),
                }
            }
        }
    }
    let coeffs = crt.unwrap().symmetric();
    let res = from_dense(&others, &shape, &coeffs);
    let scale = num_traits::pow(cp, dq as usize) * num_traits::pow(cq, dp as usize);
    Ok(res.scale(&scale))
}

// ---------------------------------------------------------------------------
// gcds

/// Images of `γ·G/lc(G)` where `G = gcd(a, b)` and `γ` is a multiple of
/// `lc(G)` in the non-main variables. Returns the main-variable degree and
/// the dense image, or `None` when too many evaluation points were unlucky.
fn pgcd_dense(a: &Dense, b: &Dense, gamma: &Dense, bounds: &[usize], f: Fp, rng: &mut ChaCha8Rng) -> Option<(usize, Vec<u64>)> {
    let k = bounds.len();
    if k == 0 {
        let g = uni_gcd(&a.c, &b.c, f);
        let s = gamma.c[0];
        return Some((g.len() - 1, g.iter().map(|&x| f.mul(x, s)).collect()));
    }
    let need = bounds[k - 1] + 1;
    let mut used = HashSet::new();
    let mut xs = Vec::with_capacity(need);
    let mut ys: Vec<Vec<u64>> = Vec::with_capacity(need);
    let mut deg = usize::MAX;
    let mut attempts = 0;
    while xs.len() < need {
        attempts += 1;
        if attempts > 4 * need + 40 {
            return None;
        }
        let v = fresh_point(rng, &mut used, f);
        let gv = gamma.eval_last(v, f);
        if gv.is_zero() {
            continue;
        }
        let av = a.eval_last(v, f);
        let bv = b.eval_last(v, f);
        if !av.top_nonzero() || !bv.top_nonzero() {
            continue;
        }
        let Some((d, g)) = pgcd_dense(&av, &bv, &gv, &bounds[..k - 1], f, rng) else {
            continue;
        };
        if d < deg {
            deg = d;
            xs.clear();
            ys.clear();
        } else if d > deg {
            continue;
        }
        xs.push(v);
        ys.push(g);
    }
    let coeffs = interpolate(&xs, ys, f);
    let inner = coeffs[0].len();
    let mut out = vec![0u64; inner * need];
    for (e, col) in coeffs.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            out[j * need + e] = x;
        }
    }
    Some((deg, out))
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    content_primitive(p).1
}

/// Gcd over ℚ, normalized to a primitive integer polynomial with positive
/// leading coefficient, by Brown's dense modular algorithm.
pub fn gcd_modular(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if let Some(v) = a.vars().iter().find(|v| !b.has_var(v)) {
        return gcd_modular(&content_in(a, v), b);
    }
    if let Some(v) = b.vars().iter().find(|v| !a.has_var(v)) {
        return gcd_modular(a, &content_in(b, v));
    }
    let a = normalize(a);
    let b = normalize(b);
    // main variable: the one with the largest common degree keeps the grid small
    let x = a
        .vars()
        .iter()
        .rev()
        .max_by_key(|v| a.degree_in(v).min(b.degree_in(v)))
        .unwrap()
        .clone();
    let ca = content_in(&a, &x);
    let cb = content_in(&b, &x);
    let c = gcd_modular(&ca, &cb);
    let aa = normalize(&a.div_exact(&ca).expect("content divides"));
    let bb = normalize(&b.div_exact(&cb).expect("content divides"));
    let h = if aa.vars() == bb.vars() { primitive_gcd(&aa, &bb, &x) } else { gcd_modular(&aa, &bb) };
    normalize(&(&c * &h))
}

/// Gcd of two integral polynomials that are primitive with respect to `x`
/// and share the same variables.
fn primitive_gcd(a: &MultiPoly, b: &MultiPoly, x: &str) -> MultiPoly {
    let la = a.coefficients_in(x).pop().unwrap();
    let lb = b.coefficients_in(x).pop().unwrap();
    // over ℤ, so that lc(G) divides it and the images stay integral
    let int_content = content_primitive(&la).0.numer().gcd(content_primitive(&lb).0.numer());
    let gamma = gcd_modular(&la, &lb).scale(&Rational::from_integer(int_content));
    let others = sorted_others(a.vars().iter().cloned(), x);
    let mut order = vec![x.to_string()];
    order.extend(others.iter().cloned());
    let bounds: Vec<usize> = others
        .iter()
        .map(|y| (gamma.degree_in(y) + a.degree_in(y).min(b.degree_in(y))) as usize)
        .collect();
    let ad = IntDense::new(a, &order);
    let bd = IntDense::new(b, &order);
    let gd = IntDense::new(&gamma, &others);
    let max_deg = a.degree_in(x).min(b.degree_in(x)) as usize;

    let mut crt: Option<Crt> = None;
    let mut deg = usize::MAX;
    let mut previous: Option<Vec<BigInt>> = None;
    for &pr in primes() {
        let f = Fp::new(pr);
        let (a_p, b_p) = (ad.reduce(f), bd.reduce(f));
        let mut g_p = gd.reduce(f);
        if others.is_empty() {
            g_p.shape = vec![1];
        }
        if !a_p.top_nonzero() || !b_p.top_nonzero() || g_p.is_zero() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(pr);
        let Some((d, img)) = pgcd_dense(&a_p, &b_p, &g_p, &bounds, f, &mut rng) else {
            continue;
        };
        let img: Vec<u64> = img.into_iter().map(|x| f.to_u64(x)).collect();
        if d == 0 {
            return MultiPoly::one();
        }
        if d > max_deg || d > deg {
            continue;
        }
        if d < deg {
            deg = d;
            crt = Some(Crt::new(&img, pr));
            previous = None;
            continue;
        }
        let c = crt.as_mut().unwrap();
        c.add(&img, pr);
        let current = c.symmetric();
        if previous.as_ref() == Some(&current) {
            let mut shape = vec![deg + 1];
            shape.extend(bounds.iter().map(|d| d + 1));
            let cand = from_dense(&order, &shape, &current);
            let cont = content_in(&cand, x);
            let h = normalize(&cand.div_exact(&cont).expect("content divides"));
            if a.div_exact(&h).is_ok() && b.div_exact(&h).is_ok() {
                return h;
            }
        }
        previous = Some(current);
    }
    panic!("modular gcd did not stabilize within {PRIME_COUNT} primes");
}

#[cfg(test)]
mod tests {
    use super::super::resultant::resultant_bareiss;
    use super::super::gcd::gcd_prs;
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn primes_are_prime_and_distinct() {
        let ps = primes();
        assert_eq!(ps[0], (1u64 << 61) - 1);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime_u64((1u64 << 61) - 3));
    }

    #[test]
    fn montgomery_field() {
        let f = Fp::new(1_000_000_007);
        let (a, b) = (f.from_u64(123_456_789), f.from_u64(987_654_321));
        assert_eq!(f.to_u64(f.mul(a, b)), mulmod(123_456_789, 987_654_321, 1_000_000_007));
        assert_eq!(f.to_u64(f.mul(a, f.inv(a))), 1);
        let mut xs = vec![a, b, f.from_u64(5)];
        f.batch_inv(&mut xs);
        assert_eq!(f.to_u64(f.mul(xs[2], f.from_u64(5))), 1);
        assert_eq!(f.to_u64(f.mul(xs[0], a)), 1);
    }

    #[test]
    fn univariate_resultant_mod_p() {
        let f = Fp::new(1_000_000_007);
        let v = |xs: &[i64]| -> Vec<u64> { xs.iter().map(|&x| f.reduce(&BigInt::from(x))).collect() };
        // Res(x^2 - 2, x - 3) = 9 - 2
        assert_eq!(f.to_u64(uni_res(&v(&[-2, 0, 1]), &v(&[-3, 1]), f)), 7);
        assert_eq!(f.to_u64(uni_res(&v(&[-3, 1]), &v(&[-2, 0, 1]), f)), 7);
        assert_eq!(uni_res(&v(&[1, 2, 1]), &v(&[1, 1]), f), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Fp::new(101);
        // 3 + 2x + 5x^2 at 1, 4, 9
        let xs: Vec<u64> = [1u64, 4, 9].iter().map(|&x| f.from_u64(x)).collect();
        let ys = [1u64, 4, 9].iter().map(|&x| vec![f.from_u64((3 + 2 * x + 5 * x * x) % 101)]).collect();
        let got: Vec<Vec<u64>> = interpolate(&xs, ys, f).into_iter().map(|c| vec![f.to_u64(c[0])]).collect();
        assert_eq!(got, vec![vec![3], vec![2], vec![5]]);
    }

    #[test]
    fn resultant_matches_bareiss() {
        let cases = [
            ("x^2 + a*x + 1", "x^2 + b*x + 1", "x"),
            ("3*x^3 - y*x + 2*y^2", "x^2*y - 5*x + y^3 - 1", "x"),
            ("x*y*z - 1 + x^2", "x + y + z^2", "z"),
            ("x/2 + y/3", "x^2 - 7", "x"),
            ("(x-y)*(x+1)", "(x-y)*(x-2)", "x"),
        ];
        for (a, b, v) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(resultant_modular(&a, &b, v).unwrap(), resultant_bareiss(&a, &b, v).unwrap(), "{a} / {b}");
        }
    }

    #[test]
    fn resultant_needing_several_primes() {
        let a = p("x^4 - 123456789123*y^3*x + 987654321987*y");
        let b = p("x^3 + 555555555555*x*y^2 - 31415926535*y^5");
        assert_eq!(resultant_modular(&a, &b, "x").unwrap(), resultant_bareiss(&a, &b, "x").unwrap());
    }

    #[test]
    fn gcd_matches_prs() {
        let cases = [
            ("(x + y)^2 * (x - 2*y + 1)", "(x + y) * (x^2 + y^3)"),
            ("(y^2 + 1) * (x - y)", "(y^2 + 1) * (x + y)"),
            ("(x*y*z + 3*x - z^2)^2*(x+z)", "(x*y*z + 3*x - z^2)*(x-z)*(y-5)"),
            ("(1000000007*x^3*y - 99999999977*z)*(x+y+z)", "(1000000007*x^3*y - 99999999977*z)*(x-y)^2"),
            ("x^2 - 1", "x^3 - 1"),
            ("(u^3*w - 2*u + 7)*(w^2 - u)", "(u^3*w - 2*u + 7)*(w^2 + u)*(u^2 + 1)"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(gcd_modular(&a, &b), gcd_prs(&a, &b), "{a} / {b}");
        }
    }

    #[test]
    fn gcd_with_large_leading_content() {
        let g = p("(y^3 + 2*y + 11)*x^2 + y*x - 4");
        let a = &g * &p("(y^2 - 3)*x + 1");
        let b = &g * &p("(y^2 + 5)*x^3 - y");
        assert_eq!(gcd_modular(&a, &b), g);
    }
}
