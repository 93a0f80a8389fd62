//! The shared operator representation: block-indexed finite sums of
//! rational-function coefficients times permutations of the polynomial
//! variables. The block key type varies per engine (colour sequences,
//! coloured label sequences, pointed blocks, ...).

use crate::field::{Field, Scalar};
use crate::poly::{LaurentPoly, RationalFunction};
use crate::sym::Permutation;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A term ((b, c, w), C) maps f supported on block c to C * w(f) on block b,
/// where w permutes the polynomial variables.
#[derive(Debug, Clone)]
pub struct SmashOp<B: Ord + Clone> {
    pub field: Field,
    pub nvars: usize,
    pub terms: BTreeMap<(B, B, Permutation), RationalFunction>,
}

impl<B: Ord + Clone> SmashOp<B> {
    pub fn zero(field: Field, nvars: usize) -> Self {
        SmashOp { field, nvars, terms: BTreeMap::new() }
    }

    pub fn identity_on<I: IntoIterator<Item = B>>(field: Field, nvars: usize, blocks: I) -> Self {
        let mut op = Self::zero(field, nvars);
        for b in blocks {
            op.add_term(
                b.clone(),
                b,
                Permutation::identity(nvars),
                RationalFunction::one(field, nvars),
            );
        }
        op
    }

    pub fn single(
        field: Field,
        nvars: usize,
        b: B,
        c: B,
        w: Permutation,
        coeff: RationalFunction,
    ) -> Self {
        let mut op = Self::zero(field, nvars);
        op.add_term(b, c, w, coeff);
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn add_term(&mut self, b: B, c: B, w: Permutation, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(w.n(), self.nvars);
        let key = (b, c, w);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = old.add(&coeff);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for ((b, c, w), coeff) in &other.terms {
            r.add_term(b.clone(), c.clone(), w.clone(), coeff.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b, c, w), coeff) in &self.terms {
            r.add_term(b.clone(), c.clone(), w.clone(), coeff.scale(s));
        }
        r
    }

    /// Operator composition: (C w)(D v) = (C * w(D)) (w v) on composable
    /// blocks, zero otherwise.
    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b1, c1, w), cw) in &self.terms {
            for ((b2, c2, v), dv) in &other.terms {
                if c1 != b2 {
                    continue;
                }
                let coeff = cw.mul(&dv.apply_perm(&w.images));
                r.add_term(b1.clone(), c2.clone(), w.compose(v), coeff);
            }
        }
        r
    }

    /// Right composition with multiplication by a polynomial on source
    /// block c: self o (mult by g).
    pub fn mul_poly_right(&self, c: &B, g: &LaurentPoly) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b, src, w), coeff) in &self.terms {
            if src != c {
                continue;
            }
            r.add_term(
                b.clone(),
                src.clone(),
                w.clone(),
                coeff.mul_poly(&g.apply_perm(&w.images)),
            );
        }
        r
    }

    /// Left composition with multiplication by a polynomial on every target.
    pub fn mul_poly_left(&self, g: &LaurentPoly) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b, src, w), coeff) in &self.terms {
            r.add_term(b.clone(), src.clone(), w.clone(), coeff.mul_poly(g));
        }
        r
    }

    /// Right composition with a rational coefficient on source block c.
    pub fn mul_rat_right(&self, c: &B, g: &RationalFunction) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b, src, w), coeff) in &self.terms {
            if src != c {
                continue;
            }
            r.add_term(
                b.clone(),
                src.clone(),
                w.clone(),
                coeff.mul(&g.apply_perm(&w.images)),
            );
        }
        r
    }

    pub fn eq(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<&(B, B, Permutation)> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for k in keys {
            let zero = RationalFunction::zero(self.field, self.nvars);
            let a = self.terms.get(k).unwrap_or(&zero);
            let b = other.terms.get(k).unwrap_or(&zero);
            if !a.eq(b) {
                return false;
            }
        }
        true
    }

    /// Applies the operator to a polynomial supported on one block.
    pub fn apply(&self, c: &B, f: &LaurentPoly) -> BTreeMap<B, RationalFunction> {
        let mut out: BTreeMap<B, RationalFunction> = BTreeMap::new();
        for ((b, src, w), coeff) in &self.terms {
            if src != c {
                continue;
            }
            let val = coeff.mul_poly(&f.apply_perm(&w.images));
            match out.get_mut(b) {
                Some(acc) => *acc = acc.add(&val),
                None => {
                    out.insert(b.clone(), val);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Applies the operator expecting polynomial output on every block.
    pub fn apply_poly(&self, c: &B, f: &LaurentPoly) -> Result<BTreeMap<B, LaurentPoly>> {
        let mut out = BTreeMap::new();
        for (b, v) in self.apply(c, f) {
            let p = v
                .as_poly()
                .ok_or_else(|| Error::NotInAlgebra("non-polynomial action".into()))?;
            out.insert(b, p);
        }
        Ok(out)
    }

    /// Re-keys every block through the given map.
    pub fn map_blocks<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> SmashOp<C> {
        let mut r = SmashOp::zero(self.field, self.nvars);
        for ((b, c, w), coeff) in &self.terms {
            r.add_term(f(b), f(c), w.clone(), coeff.clone());
        }
        r
    }

    /// Restricts to terms with the given source block.
    pub fn restrict_source(&self, c: &B) -> Self {
        let mut r = Self::zero(self.field, self.nvars);
        for ((b, src, w), coeff) in &self.terms {
            if src == c {
                r.add_term(b.clone(), src.clone(), w.clone(), coeff.clone());
            }
        }
        r
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for SmashOp<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((b, c, w), coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{b}<-{c}; {w}] ({coeff})")?;
        }
        Ok(())
    }
}
