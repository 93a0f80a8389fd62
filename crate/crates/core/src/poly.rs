//! Sparse exact Laurent polynomials, rational functions with factored
//! denominators, truncated power-series jets and Demazure operators.

use crate::field::{Field, Scalar};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lexicographic ordering. The grading is used
/// for deterministic printing and leading-term extraction only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expo(pub Vec<i32>);

impl Expo {
    pub fn zero(n: usize) -> Self {
        Expo(vec![0; n])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn add(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse Laurent polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    pub field: Field,
    pub nvars: usize,
    pub terms: BTreeMap<Expo, Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        LaurentPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Expo::zero(nvars), c);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable x_{i+1} (0-based index).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::var_pow(field, nvars, i, 1)
    }

    pub fn var_pow(field: Field, nvars: usize, i: usize, e: i32) -> Self {
        assert!(i < nvars);
        let mut exp = Expo::zero(nvars);
        exp.0[i] = e;
        Self::monomial(field, nvars, exp, field.one())
    }

    pub fn monomial(field: Field, nvars: usize, exp: Expo, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Expo::zero(self.nvars))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn insert_term(&mut self, exp: Expo, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.insert_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = c.neg();
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            *v = v.mul(c);
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = Self::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.insert_term(e1.add(e2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.field, self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn leading(&self) -> Option<(&Expo, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Applies the variable permutation x_i -> x_{w(i)} (0-based images).
    pub fn apply_perm(&self, w: &[usize]) -> Self {
        assert_eq!(w.len(), self.nvars);
        let mut r = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i32; self.nvars];
            for (i, &a) in e.0.iter().enumerate() {
                ne[w[i]] = a;
            }
            r.insert_term(Expo(ne), c.clone());
        }
        r
    }

    /// Componentwise minimum of the exponent vectors.
    fn min_exponents(&self) -> Expo {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (i, &a) in e.0.iter().enumerate() {
                m[i] = m[i].min(a);
            }
        }
        Expo(m.into_iter().map(|x| if x == i32::MAX { 0 } else { x }).collect())
    }

    fn shift_exponents(&self, by: &Expo) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            r.terms.insert(e.add(by), c.clone());
        }
        r
    }

    /// Exact division in the Laurent ring; `None` if `other` does not
    /// divide `self`. Monomials are units, so divisibility is decided on
    /// the primitive (nonnegative, per-variable trailing exponent zero)
    /// parts in the ordinary polynomial ring.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.nvars, other.nvars);
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.field, self.nvars));
        }
        let mf = self.min_exponents();
        let mg = other.min_exponents();
        let fp = self.shift_exponents(&Expo::zero(self.nvars).sub(&mf));
        let gp = other.shift_exponents(&Expo::zero(self.nvars).sub(&mg));
        let (lg, cg) = gp.leading().unwrap();
        let (lg, cg) = (lg.clone(), cg.clone());
        let mut rem = fp;
        let mut quot = Self::zero(self.field, self.nvars);
        while !rem.is_zero() {
            let (lf, cf) = rem.leading().unwrap();
            if lf.0.iter().zip(&lg.0).any(|(a, b)| a < b) {
                return None;
            }
            let t = Self::monomial(self.field, self.nvars, lf.sub(&lg), cf.div(&cg).ok()?);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(&gp));
        }
        Some(quot.shift_exponents(&mf.sub(&mg)))
    }

    /// Evaluates at a point; entries must be nonzero where negative
    /// exponents occur.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &a) in e.0.iter().enumerate() {
                t = t.mul(&point[i].pow(a as i64)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes x_i -> shift_i + scale_i * x_i; requires nonnegative
    /// exponents.
    pub fn substitute_affine(&self, subs: &[(Scalar, Scalar)]) -> Result<Self> {
        assert_eq!(subs.len(), self.nvars);
        let mut acc = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.field, self.nvars, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a < 0 {
                    return Err(Error::PoleAtPoint(
                        "negative exponent in affine substitution".into(),
                    ));
                }
                let lin = Self::constant(self.field, self.nvars, subs[i].0.clone()).add(
                    &Self::var(self.field, self.nvars, i).scale(&subs[i].1),
                );
                term = term.mul(&lin.pow(a as u32));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Drops all terms of total degree >= n.
    pub fn truncate(&self, n: usize) -> Self {
        let mut r = self.clone();
        r.terms.retain(|e, _| e.total() < n as i64);
        r
    }

    /// Swaps the variables u and v.
    pub fn swap_vars(&self, u: usize, v: usize) -> Self {
        let mut w: Vec<usize> = (0..self.nvars).collect();
        w.swap(u, v);
        self.apply_perm(&w)
    }

    /// Divided difference for the variable pair (u, v):
    /// f -> (f - t_{uv} f) / (x_u - x_v), computed monomial-wise.
    pub fn divided_difference(&self, u: usize, v: usize) -> Self {
        assert!(u != v);
        let (u, v) = (u.min(v), u.max(v));
        let mut r = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            let a = e.0[u];
            let b = e.0[v];
            if a == b {
                continue;
            }
            // (x^a y^b - x^b y^a)/(x - y) = sum_{j=0}^{a-b-1} x^{b+j} y^{a-1-j}
            let (lo, hi, sign) = if a > b { (b, a, false) } else { (a, b, true) };
            for j in 0..(hi - lo) {
                let mut ne = e.clone();
                ne.0[u] = lo + j;
                ne.0[v] = hi - 1 - j;
                r.insert_term(ne, if sign { c.neg() } else { c.clone() });
            }
        }
        r
    }

    /// The elementary symmetric Laurent polynomial e_k(x_1..x_n).
    pub fn elementary_symmetric(field: Field, nvars: usize, k: usize) -> Self {
        fn rec(field: Field, nvars: usize, k: usize, start: usize) -> LaurentPoly {
            if k == 0 {
                return LaurentPoly::one(field, nvars);
            }
            let mut acc = LaurentPoly::zero(field, nvars);
            for i in start..=nvars.saturating_sub(k) {
                let sub = rec(field, nvars, k - 1, i + 1);
                acc = acc.add(&sub.mul(&LaurentPoly::var(field, nvars, i)));
            }
            acc
        }
        rec(field, nvars, k, 0)
    }
}

/// A reduced-word plan for a composite Demazure operator.
#[derive(Debug, Clone)]
pub struct DemazurePlan {
    pub word: Vec<usize>,
}

impl DemazurePlan {
    /// `word` holds 1-based simple-reflection indices s_{k}.
    pub fn new(word: Vec<usize>, n: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        for &k in word.iter().rev() {
            if k == 0 || k >= n {
                return Err(Error::IndexOutOfRange(k));
            }
            perm.swap(k - 1, k);
        }
        let inv = crate::sym::Permutation::new(perm.clone()).unwrap().length();
        if inv != word.len() {
            return Err(Error::NonReducedWord(word));
        }
        Ok(DemazurePlan { word })
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut g = f.clone();
        for &k in self.word.iter().rev() {
            g = g.divided_difference(k - 1, k);
        }
        g
    }
}

/// Demazure operator for a single simple reflection s_r (1-based r).
pub fn demazure(r: usize, f: &LaurentPoly) -> LaurentPoly {
    f.divided_difference(r - 1, r)
}

/// Composite Demazure operator along the block-swap permutation w_{a,b}
/// acting on variables `offset..offset+a+b`.
pub fn demazure_block_swap(f: &LaurentPoly, a: usize, b: usize, offset: usize) -> LaurentPoly {
    let w = crate::sym::Permutation::block_swap(a, b);
    let word = w.lex_min_reduced_word();
    let mut g = f.clone();
    for &k in word.iter().rev() {
        g = g.divided_difference(offset + k - 1, offset + k);
    }
    g
}

/// Composite Demazure for the longest element of S_m acting on
/// variables `offset..offset+m`.
pub fn demazure_longest(f: &LaurentPoly, m: usize, offset: usize) -> LaurentPoly {
    let w = crate::sym::Permutation::longest(m);
    let word = w.lex_min_reduced_word();
    let mut g = f.clone();
    for &k in word.iter().rev() {
        g = g.divided_difference(offset + k - 1, offset + k);
    }
    g
}

// ---------------------------------------------------------------------------
// Arrow polynomials
// ---------------------------------------------------------------------------

fn binomial_factor(field: Field, nvars: usize, i: usize, j: usize, q: &Scalar) -> LaurentPoly {
    // x_i - q x_j
    LaurentPoly::var(field, nvars, i).sub(&LaurentPoly::var(field, nvars, j).scale(q))
}

/// Block membership: var index (0-based) -> block number for a composition.
fn block_of(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (b, &len) in blocks.iter().enumerate() {
        out.extend(std::iter::repeat(b).take(len));
    }
    out
}

/// Factors of the right arrow polynomial: (x_i - q x_j) over i < j in the
/// same block.
pub fn arrow_right_factors(
    field: Field,
    blocks: &[usize],
    d: usize,
    q: &Scalar,
) -> Vec<LaurentPoly> {
    let blk = block_of(blocks);
    assert_eq!(blk.len(), d);
    let mut fs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if blk[i] == blk[j] {
                fs.push(binomial_factor(field, d, i, j, q));
            }
        }
    }
    fs
}

/// Factors of the left arrow polynomial: (x_j - q x_i) over i < j in the
/// same block.
pub fn arrow_left_factors(
    field: Field,
    blocks: &[usize],
    d: usize,
    q: &Scalar,
) -> Vec<LaurentPoly> {
    let blk = block_of(blocks);
    assert_eq!(blk.len(), d);
    let mut fs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if blk[i] == blk[j] {
                fs.push(binomial_factor(field, d, j, i, q));
            }
        }
    }
    fs
}

/// Factors of the complementary left arrow polynomial: (x_j - q x_i) over
/// i < j in different blocks.
pub fn arrow_left_complement_factors(
    field: Field,
    blocks: &[usize],
    d: usize,
    q: &Scalar,
) -> Vec<LaurentPoly> {
    let blk = block_of(blocks);
    assert_eq!(blk.len(), d);
    let mut fs = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if blk[i] != blk[j] {
                fs.push(binomial_factor(field, d, j, i, q));
            }
        }
    }
    fs
}

/// Factors of the crossing polynomial for a local split (a, b) at `offset`:
/// left variant (x_j - q x_i), right variant (x_i - q x_j), over
/// offset < i <= offset+a < j <= offset+a+b (1-based bounds).
pub fn cross_factors(
    field: Field,
    d: usize,
    a: usize,
    b: usize,
    offset: usize,
    q: &Scalar,
    left: bool,
) -> Vec<LaurentPoly> {
    let mut fs = Vec::new();
    for i in offset..offset + a {
        for j in offset + a..offset + a + b {
            if left {
                fs.push(binomial_factor(field, d, j, i, q));
            } else {
                fs.push(binomial_factor(field, d, i, j, q));
            }
        }
    }
    fs
}

pub fn product(field: Field, nvars: usize, factors: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::one(field, nvars);
    for f in factors {
        acc = acc.mul(f);
    }
    acc
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// A fraction of Laurent polynomials. The denominator is kept as a list of
/// monic factors with multiplicities; cancellation tries exact division of
/// the numerator by each factor. Equality is cross-multiplication equality,
/// no normal form is ever required.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    pub num: LaurentPoly,
    pub den: Vec<(LaurentPoly, u32)>,
}

impl RationalFunction {
    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(field, nvars))
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(field, nvars))
    }

    pub fn field(&self) -> Field {
        self.num.field
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `num / prod(factors)`, normalizing each factor to monic leading
    /// coefficient and absorbing the scalars into the numerator.
    pub fn from_parts(num: LaurentPoly, factors: Vec<LaurentPoly>) -> Self {
        let mut r = RationalFunction { num, den: Vec::new() };
        for f in factors {
            r.push_den_factor(f);
        }
        r.cancel();
        r
    }

    fn push_den_factor(&mut self, f: LaurentPoly) {
        assert!(!f.is_zero(), "zero denominator factor");
        if f.is_constant() {
            self.num = self.num.scale(&f.constant_term().inv().expect("nonzero"));
            return;
        }
        let lead = f.leading().unwrap().1.clone();
        let monic = f.scale(&lead.inv().expect("nonzero"));
        self.num = self.num.scale(&lead.inv().expect("nonzero"));
        for (g, m) in self.den.iter_mut() {
            if *g == monic {
                *m += 1;
                return;
            }
        }
        self.den.push((monic, 1));
    }

    /// Cancels denominator factors that exactly divide the numerator.
    pub fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            let mut cancelled = false;
            while self.den[i].1 > 0 {
                if let Some(q) = self.num.exact_div(&self.den[i].0) {
                    self.num = q;
                    self.den[i].1 -= 1;
                    cancelled = true;
                } else {
                    break;
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
                let _ = cancelled;
            } else {
                i += 1;
            }
        }
        self.den.sort();
    }

    fn den_poly(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.field(), self.nvars());
        for (g, m) in &self.den {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // lcm of the factored denominators
        let mut den: Vec<(LaurentPoly, u32)> = self.den.clone();
        for (g, m) in &other.den {
            match den.iter_mut().find(|(h, _)| h == g) {
                Some((_, k)) => *k = (*k).max(*m),
                None => den.push((g.clone(), *m)),
            }
        }
        let mult_self = |r: &mut LaurentPoly, from: &[(LaurentPoly, u32)]| {
            for (g, m) in &den {
                let have = from.iter().find(|(h, _)| h == g).map(|(_, k)| *k).unwrap_or(0);
                for _ in have..*m {
                    *r = r.mul(g);
                }
            }
        };
        let mut n1 = self.num.clone();
        mult_self(&mut n1, &self.den);
        let mut n2 = other.num.clone();
        mult_self(&mut n2, &other.den);
        let mut r = RationalFunction { num: n1.add(&n2), den };
        r.cancel();
        r
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.clone(),
        };
        for (g, m) in &other.den {
            for _ in 0..*m {
                r.push_den_factor(g.clone());
            }
        }
        r.cancel();
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut r = RationalFunction { num: self.num.mul(p), den: self.den.clone() };
        r.cancel();
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = LaurentPoly::one(self.field(), self.nvars());
        for (g, m) in &self.den {
            num = num.mul(&g.pow(*m));
        }
        let mut r = RationalFunction { num, den: Vec::new() };
        r.push_den_factor(self.num.clone());
        r.cancel();
        Ok(r)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn apply_perm(&self, w: &[usize]) -> Self {
        let mut r = RationalFunction { num: self.num.apply_perm(w), den: Vec::new() };
        for (g, m) in &self.den {
            for _ in 0..*m {
                r.push_den_factor(g.apply_perm(w));
            }
        }
        r
    }

    /// Cross-multiplication equality.
    pub fn eq(&self, other: &Self) -> bool {
        let a = self.num.mul(&other.den_poly());
        let b = other.num.mul(&self.den_poly());
        a == b
    }

    /// Returns the underlying polynomial if the denominator fully cancels.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        let mut r = self.clone();
        r.cancel();
        if r.den.is_empty() {
            Some(r.num)
        } else {
            None
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let mut acc = self.num.eval(point)?;
        for (g, m) in &self.den {
            let v = g.eval(point)?;
            if v.is_zero() {
                return Err(Error::PoleAtPoint(format!("{g}")));
            }
            for _ in 0..*m {
                acc = acc.div(&v)?;
            }
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Jets
// ---------------------------------------------------------------------------

/// A truncated power series at a base point: a polynomial of total degree
/// < order in the shifted variables (x_r - point_r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    pub point: Vec<Scalar>,
    pub order: usize,
    pub poly: LaurentPoly,
}

impl Jet {
    pub fn zero(field: Field, point: Vec<Scalar>, order: usize) -> Self {
        let n = point.len();
        Jet { point, order, poly: LaurentPoly::zero(field, n) }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.point, other.point);
        assert_eq!(self.order, other.order);
        Jet { point: self.point.clone(), order: self.order, poly: self.poly.add(&other.poly) }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        assert_eq!(self.point, other.point);
        assert_eq!(self.order, other.order);
        Jet {
            point: self.point.clone(),
            order: self.order,
            poly: self.poly.mul(&other.poly).truncate(self.order),
        }
    }
}

/// Expands a single Laurent monomial factor (point_i + z_i)^a as a truncated
/// series in z_i.
fn shifted_var_power(
    field: Field,
    nvars: usize,
    i: usize,
    base: &Scalar,
    a: i32,
    order: usize,
) -> Result<LaurentPoly> {
    let z = LaurentPoly::var(field, nvars, i);
    if a >= 0 {
        let lin = LaurentPoly::constant(field, nvars, base.clone()).add(&z);
        return Ok(lin.pow(a as u32).truncate(order));
    }
    if base.is_zero() {
        return Err(Error::PoleAtPoint(format!("variable {} vanishes at base point", i + 1)));
    }
    // (p + z)^-1 = p^-1 sum_k (-z/p)^k, truncated
    let pinv = base.inv()?;
    let mut geom = LaurentPoly::zero(field, nvars);
    let mut term = LaurentPoly::constant(field, nvars, pinv.clone());
    for _ in 0..order {
        geom = geom.add(&term);
        term = term.mul(&z).scale(&pinv.neg());
    }
    let mut acc = LaurentPoly::one(field, nvars);
    for _ in 0..(-a) {
        acc = acc.mul(&geom).truncate(order);
    }
    Ok(acc)
}

/// Expands a Laurent polynomial around a point as a truncated series in the
/// shifted variables.
pub fn poly_to_jet(p: &LaurentPoly, point: &[Scalar], order: usize) -> Result<Jet> {
    let field = p.field;
    let n = p.nvars;
    let mut acc = LaurentPoly::zero(field, n);
    for (e, c) in &p.terms {
        let mut term = LaurentPoly::constant(field, n, c.clone());
        for (i, &a) in e.0.iter().enumerate() {
            if a != 0 {
                term = term
                    .mul(&shifted_var_power(field, n, i, &point[i], a, order)?)
                    .truncate(order);
            }
        }
        acc = acc.add(&term);
    }
    Ok(Jet { point: point.to_vec(), order, poly: acc.truncate(order) })
}

/// Expands a rational function around a point. Denominator factors that
/// vanish at the point must divide the numerator exactly, otherwise
/// `PoleAtPoint` is returned.
pub fn expand_to_jet(f: &RationalFunction, point: &[Scalar], order: usize) -> Result<Jet> {
    let field = f.field();
    let n = f.nvars();
    let mut num = f.num.clone();
    let mut regular: Vec<LaurentPoly> = Vec::new();
    for (g, m) in &f.den {
        for _ in 0..*m {
            if g.eval(point)?.is_zero() {
                match num.exact_div(g) {
                    Some(q) => num = q,
                    None => return Err(Error::PoleAtPoint(format!("{g}"))),
                }
            } else {
                regular.push(g.clone());
            }
        }
    }
    let mut jet = poly_to_jet(&num, point, order)?;
    for g in regular {
        let gj = poly_to_jet(&g, point, order)?;
        let c0 = gj.poly.constant_term();
        debug_assert!(!c0.is_zero());
        // series inverse: 1/(c(1-u)) = c^-1 sum u^k
        let cinv = c0.inv()?;
        let u = LaurentPoly::constant(field, n, field.one())
            .sub(&gj.poly.scale(&cinv));
        let mut inv = LaurentPoly::zero(field, n);
        let mut term = LaurentPoly::constant(field, n, cinv);
        for _ in 0..order {
            inv = inv.add(&term);
            term = term.mul(&u).truncate(order);
        }
        jet.poly = jet.poly.mul(&inv).truncate(order);
    }
    Ok(jet)
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

impl LaurentPoly {
    pub fn display<'a>(&'a self, var: char) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    var: char,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            let neg = match c {
                Scalar::Rat(r) => r < &num::rational::BigRational::from_integer(0.into()),
                _ => false,
            };
            let mag = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || e.0.iter().all(|&a| a == 0) {
                parts.push(format!("{mag}"));
            }
            for (i, &a) in e.0.iter().enumerate() {
                if a == 1 {
                    parts.push(format!("{}{}", self.var, i + 1));
                } else if a != 0 {
                    parts.push(format!("{}{}^{}", self.var, i + 1, a));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('x'))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num.display('x'))
        } else {
            write!(f, "({})", self.num.display('x'))?;
            for (g, m) in &self.den {
                if *m == 1 {
                    write!(f, "/({})", g.display('x'))?;
                } else {
                    write!(f, "/({})^{}", g.display('x'), m)?;
                }
            }
            Ok(())
        }
    }
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && (b[*pos] as char).is_whitespace() {
        *pos += 1;
    }
}

fn parse_int(b: &[u8], pos: &mut usize) -> Result<i64> {
    skip_ws(b, pos);
    let start = *pos;
    if *pos < b.len() && (b[*pos] == b'-' || b[*pos] == b'+') {
        *pos += 1;
    }
    let digits = *pos;
    while *pos < b.len() && (b[*pos] as char).is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits {
        return Err(Error::SyntaxError { pos: start, msg: "expected integer".into() });
    }
    std::str::from_utf8(&b[start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| Error::SyntaxError { pos: start, msg: "integer overflow".into() })
}

/// Parses the canonical polynomial text form, e.g. `3*x1^2*x2^-1 - 1/2`.
pub fn parse_poly(src: &str, field: Field, nvars: usize, var: char) -> Result<LaurentPoly> {
    let b = src.as_bytes();
    let mut pos = 0usize;
    let mut acc = LaurentPoly::zero(field, nvars);
    let mut first = true;

    skip_ws(b, &mut pos);
    if pos >= b.len() {
        return Err(Error::SyntaxError { pos, msg: "empty polynomial".into() });
    }
    while pos < b.len() {
        let mut neg = false;
        skip_ws(b, &mut pos);
        if !first {
            match b.get(pos) {
                Some(b'+') => pos += 1,
                Some(b'-') => {
                    neg = true;
                    pos += 1;
                }
                _ => return Err(Error::SyntaxError { pos, msg: "expected + or -".into() }),
            }
        } else if b.get(pos) == Some(&b'-') {
            neg = true;
            pos += 1;
        }
        first = false;

        // term: factors separated by '*'
        let mut coeff = field.one();
        let mut exp = Expo::zero(nvars);
        loop {
            skip_ws(b, &mut pos);
            if pos < b.len() && (b[pos] as char) == var {
                pos += 1;
                let idx = parse_int(b, &mut pos)?;
                if idx < 1 || idx as usize > nvars {
                    return Err(Error::IndexError(format!("variable index {idx}")));
                }
                let mut e = 1i64;
                skip_ws(b, &mut pos);
                if pos < b.len() && b[pos] == b'^' {
                    pos += 1;
                    e = parse_int(b, &mut pos)?;
                }
                let e32 = i32::try_from(e)
                    .map_err(|_| Error::SyntaxError { pos, msg: "exponent overflow".into() })?;
                exp.0[idx as usize - 1] = exp.0[idx as usize - 1]
                    .checked_add(e32)
                    .ok_or(Error::SyntaxError { pos, msg: "exponent overflow".into() })?;
            } else if pos < b.len() && (b[pos] as char).is_ascii_digit() {
                let n = parse_int(b, &mut pos)?;
                let mut c = field.from_i64(n);
                skip_ws(b, &mut pos);
                if pos < b.len() && b[pos] == b'/' {
                    pos += 1;
                    let m = parse_int(b, &mut pos)?;
                    if m == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    c = c.div(&field.from_i64(m))?;
                }
                coeff = coeff.mul(&c);
            } else {
                return Err(Error::SyntaxError { pos, msg: "expected factor".into() });
            }
            skip_ws(b, &mut pos);
            if pos < b.len() && b[pos] == b'*' {
                pos += 1;
            } else {
                break;
            }
        }
        if neg {
            coeff = coeff.neg();
        }
        acc = acc.add(&LaurentPoly::monomial(field, nvars, exp, coeff));
        skip_ws(b, &mut pos);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    const F: Field = Field::Rat;

    fn x(i: usize, n: usize) -> LaurentPoly {
        LaurentPoly::var(F, n, i)
    }

    #[test]
    fn demazure_basics() {
        // d1(x1) = 1
        assert_eq!(demazure(1, &x(0, 2)), LaurentPoly::one(F, 2));
        // d1(x1 x2) = 0 (symmetric input)
        assert!(demazure(1, &x(0, 2).mul(&x(1, 2))).is_zero());
        // d1(x1^2) = x1 + x2 by direct polynomial division of x1^2-x2^2 by x1-x2
        let num = x(0, 2).pow(2).sub(&x(1, 2).pow(2));
        let den = x(0, 2).sub(&x(1, 2));
        let oracle = num.exact_div(&den).unwrap();
        assert_eq!(demazure(1, &x(0, 2).pow(2)), oracle);
        assert_eq!(oracle, x(0, 2).add(&x(1, 2)));
    }

    #[test]
    fn demazure_on_negative_exponents() {
        // d1(x1^-1) = (x1^-1 - x2^-1)/(x1 - x2) = -x1^-1 x2^-1
        let f = LaurentPoly::var_pow(F, 2, 0, -1);
        let got = demazure(1, &f);
        let oracle = f
            .sub(&LaurentPoly::var_pow(F, 2, 1, -1))
            .exact_div(&x(0, 2).sub(&x(1, 2)))
            .unwrap();
        assert_eq!(got, oracle);
    }

    #[test]
    fn demazure_square_zero_and_braid() {
        let f = x(0, 3).pow(3).mul(&x(1, 3).pow(2)).add(&x(2, 3).scale(&F.from_i64(5)));
        assert!(demazure(1, &demazure(1, &f)).is_zero());
        let lhs = demazure(1, &demazure(2, &demazure(1, &f)));
        let rhs = demazure(2, &demazure(1, &demazure(2, &f)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn demazure_plan_reduced_word_checks() {
        assert!(DemazurePlan::new(vec![1, 2, 1], 3).is_ok());
        assert!(matches!(
            DemazurePlan::new(vec![1, 1], 3),
            Err(crate::Error::NonReducedWord(_))
        ));
        // both reduced words of the longest element of S_3 agree on x1^2 x2
        let f = x(0, 3).pow(2).mul(&x(1, 3));
        let a = DemazurePlan::new(vec![1, 2, 1], 3).unwrap().apply(&f);
        let b = DemazurePlan::new(vec![2, 1, 2], 3).unwrap().apply(&f);
        assert_eq!(a, b);
    }

    #[test]
    fn demazure_block_swap_example() {
        // D_{1,1}(x2 - q x1) with q = 2: direct division oracle
        let q = F.from_i64(2);
        let f = x(1, 2).sub(&x(0, 2).scale(&q));
        let swapped = f.swap_vars(0, 1);
        let oracle = f.sub(&swapped).exact_div(&x(0, 2).sub(&x(1, 2))).unwrap();
        let got = demazure_block_swap(&f, 1, 1, 0);
        assert_eq!(got, oracle);
        // -(1+q) = -3
        assert_eq!(got, LaurentPoly::constant(F, 2, F.from_i64(-3)));
    }

    #[test]
    fn longest_demazure_symmetrizes() {
        let f = x(0, 3).pow(4).mul(&x(1, 3).pow(2)).add(&x(2, 3).pow(3));
        let g = demazure_longest(&f, 3, 0);
        for (u, v) in [(0, 1), (1, 2)] {
            assert_eq!(g, g.swap_vars(u, v));
        }
        // image of D_d contains the elementary symmetric polynomials:
        // the staircase x1^2 x2 maps to 1, so e_k = D_3(e_k * x1^2 x2)
        // since D_d is linear over symmetric polynomials.
        let staircase = x(0, 3).pow(2).mul(&x(1, 3));
        assert_eq!(demazure_longest(&staircase, 3, 0), LaurentPoly::one(F, 3));
        for k in 1..=3 {
            let ek = LaurentPoly::elementary_symmetric(F, 3, k);
            assert_eq!(demazure_longest(&ek.mul(&staircase), 3, 0), ek);
        }
    }

    #[test]
    fn arrow_factors_match_displayed_product() {
        // blocks (2,3): (x1-qx2)(x3-qx4)(x3-qx5)(x4-qx5)
        let q = F.from_i64(7);
        let fs = arrow_right_factors(F, &[2, 3], 5, &q);
        assert_eq!(fs.len(), 4);
        let expect = vec![
            x(0, 5).sub(&x(1, 5).scale(&q)),
            x(2, 5).sub(&x(3, 5).scale(&q)),
            x(2, 5).sub(&x(4, 5).scale(&q)),
            x(3, 5).sub(&x(4, 5).scale(&q)),
        ];
        assert_eq!(fs, expect);
        // finest composition: empty product
        assert!(arrow_right_factors(F, &[1, 1, 1], 3, &q).is_empty());
        // crossing factors (a,b) = (1,1): left variant is x2 - q x1
        let cf = cross_factors(F, 2, 1, 1, 0, &q, true);
        assert_eq!(cf, vec![x(1, 2).sub(&x(0, 2).scale(&q))]);
        // complement: left arrow over pairs in different blocks
        let comp = arrow_left_complement_factors(F, &[2, 1], 3, &q);
        let whole = arrow_left_factors(F, &[3], 3, &q);
        let part = arrow_left_factors(F, &[2, 1], 3, &q);
        let lhs = product(F, 3, &part).mul(&product(F, 3, &comp));
        assert_eq!(lhs, product(F, 3, &whole));
    }

    #[test]
    fn rational_function_equality_and_cancel() {
        // (x1^2 - x2^2)/(x1 - x2) == x1 + x2
        let num = x(0, 2).pow(2).sub(&x(1, 2).pow(2));
        let den = x(0, 2).sub(&x(1, 2));
        let f = RationalFunction::from_parts(num, vec![den.clone()]);
        assert!(f.den.is_empty());
        assert_eq!(f.num, x(0, 2).add(&x(1, 2)));

        // a/b + (-a)/b = 0
        let a = RationalFunction::from_parts(x(0, 2), vec![den.clone()]);
        assert!(a.add(&a.neg()).is_zero());

        // cross-multiplication equality without normal forms
        let g = RationalFunction::from_parts(
            x(0, 2).mul(&den),
            vec![den.clone(), den.clone()],
        );
        assert!(a.eq(&g));
        // inversion
        let ainv = a.inv().unwrap();
        assert!(a.mul(&ainv).eq(&RationalFunction::one(F, 2)));
    }

    #[test]
    fn jet_examples() {
        // f = 1/(x1 - q x2), point (1,1), q = 2, order 2:
        // -1 - (x1-1) + 2(x2-1), from the geometric series oracle below.
        let q = F.from_i64(2);
        let den = x(0, 2).sub(&x(1, 2).scale(&q));
        let f = RationalFunction::from_parts(LaurentPoly::one(F, 2), vec![den]);
        let pt = vec![F.one(), F.one()];
        let jet = expand_to_jet(&f, &pt, 2).unwrap();
        // oracle: with u = x1-1, v = x2-1 the fraction is -1/(1-(u-2v));
        // truncate the geometric series at total order < 2
        let u = x(0, 2);
        let v = x(1, 2);
        let w = u.sub(&v.scale(&q));
        let mut geo = LaurentPoly::zero(F, 2);
        let mut t = LaurentPoly::one(F, 2);
        for _ in 0..2 {
            geo = geo.add(&t);
            t = t.mul(&w).truncate(2);
        }
        let oracle = geo.neg().truncate(2);
        assert_eq!(jet.poly, oracle);
        let expect = LaurentPoly::constant(F, 2, F.from_i64(-1))
            .sub(&u)
            .add(&v.scale(&q));
        assert_eq!(jet.poly, expect);

        // f = x1 at any point: i1 + (x1 - i1)
        let f = RationalFunction::from_poly(x(0, 1));
        let pt = vec![F.from_i64(5)];
        let jet = expand_to_jet(&f, &pt, 3).unwrap();
        assert_eq!(
            jet.poly,
            LaurentPoly::constant(F, 1, F.from_i64(5)).add(&LaurentPoly::var(F, 1, 0))
        );

        // pole: 1/(x1 - q x2) at (q a, a)
        let den = x(0, 2).sub(&x(1, 2).scale(&q));
        let f = RationalFunction::from_parts(LaurentPoly::one(F, 2), vec![den]);
        let pt = vec![F.from_i64(6), F.from_i64(3)];
        assert!(matches!(
            expand_to_jet(&f, &pt, 2),
            Err(crate::Error::PoleAtPoint(_))
        ));
    }

    #[test]
    fn jet_expansion_is_ring_homomorphism() {
        // cross-check: jet(fg) = jet(f) jet(g) on regular fractions
        let q = F.from_i64(3);
        let pt = vec![F.from_i64(1), F.from_i64(2)];
        let f = RationalFunction::from_parts(
            x(0, 2).add(&x(1, 2)),
            vec![x(0, 2).sub(&x(1, 2).scale(&q))],
        );
        let g = RationalFunction::from_parts(
            LaurentPoly::var_pow(F, 2, 0, -2),
            vec![x(0, 2).scale(&q).sub(&x(1, 2))],
        );
        let n = 4;
        let lhs = expand_to_jet(&f.mul(&g), &pt, n).unwrap();
        let rhs = expand_to_jet(&f, &pt, n).unwrap().mul(&expand_to_jet(&g, &pt, n).unwrap());
        assert_eq!(lhs, rhs);

        let sum_lhs = expand_to_jet(&f.add(&g), &pt, n).unwrap();
        let sum_rhs = expand_to_jet(&f, &pt, n).unwrap().add(&expand_to_jet(&g, &pt, n).unwrap());
        assert_eq!(sum_lhs, sum_rhs);
    }

    #[test]
    fn parse_print_roundtrip() {
        let src = "3*x1^2*x2^-1 - 1/2";
        let p = parse_poly(src, F, 2, 'x').unwrap();
        let printed = format!("{}", p.display('x'));
        assert_eq!(printed, src);
        let q = parse_poly(&printed, F, 2, 'x').unwrap();
        assert_eq!(p, q);
        assert!(parse_poly("x0", F, 2, 'x').is_err());
        assert!(parse_poly("x1 +", F, 2, 'x').is_err());
        assert!(parse_poly("", F, 2, 'x').is_err());
    }

    #[test]
    fn eval_and_substitute() {
        let p = x(0, 2).mul(&x(1, 2)).add(&LaurentPoly::var_pow(F, 2, 0, -1));
        let v = p.eval(&[F.from_i64(2), F.from_i64(3)]).unwrap();
        assert_eq!(v, F.from_i64(6).add(&F.from_i64(1).div(&F.from_i64(2)).unwrap()));
        // x -> 1 + 2x
        let s = p
            .substitute_affine(&[(F.one(), F.from_i64(2)), (F.one(), F.from_i64(2))])
            .err();
        assert!(s.is_some()); // negative exponent present
        let q = x(0, 2).pow(2);
        let sub = q
            .substitute_affine(&[(F.one(), F.from_i64(2)), (F.zero(), F.one())])
            .unwrap();
        // (1+2x)^2 = 1 + 4x + 4x^2
        let expect = LaurentPoly::one(F, 2)
            .add(&x(0, 2).scale(&F.from_i64(4)))
            .add(&x(0, 2).pow(2).scale(&F.from_i64(4)));
        assert_eq!(sub, expect);
    }
}
