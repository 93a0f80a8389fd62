//! Symmetric-group, composition and colour-sequence bookkeeping.

use crate::{Error, Result};
use std::fmt;

/// A permutation of [1; n] in one-line notation, stored 0-based:
/// `images[i]` is w(i+1) - 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::BadParameter(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// w(i) with 0-based i.
    pub fn map(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The simple transposition s_k (1-based k, swapping k and k+1).
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n);
        let mut im: Vec<usize> = (0..n).collect();
        im.swap(k - 1, k);
        Permutation { images: im }
    }

    /// Composition (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut im = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            im[x] = i;
        }
        Permutation { images: im }
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// The lexicographically smallest reduced word (1-based letters),
    /// obtained greedily from smallest left descents.
    pub fn lex_min_reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: while !w.is_identity() {
            let winv = w.inverse();
            for k in 1..w.n() {
                // left descent at k: w^-1(k) > w^-1(k+1)
                if winv.images[k - 1] > winv.images[k] {
                    word.push(k);
                    w = Permutation::simple(w.n(), k).compose(&w);
                    continue 'outer;
                }
            }
            unreachable!("non-identity permutation without descent");
        }
        word
    }

    /// The longest element of S_n.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (0..n).rev().collect() }
    }

    /// The block swap w_{a,b}: i -> i+b for i <= a, i -> i-a otherwise.
    pub fn block_swap(a: usize, b: usize) -> Self {
        let mut im = vec![0; a + b];
        for i in 0..a {
            im[i] = i + b;
        }
        for i in 0..b {
            im[a + i] = i;
        }
        Permutation { images: im }
    }

    /// All permutations of S_n in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Applies the point action: sends (p_1..p_n) to q with q_{w(i)} = p_i.
    pub fn act_on_point<T: Clone>(&self, p: &[T]) -> Vec<T> {
        let mut out: Vec<T> = p.to_vec();
        for (i, x) in p.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|&x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A composition of d with positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::BadParameter("composition parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Block number of the 0-based index i.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &p) in self.parts.iter().enumerate() {
            acc += p;
            if i < acc {
                return b;
            }
        }
        panic!("index out of range");
    }

    /// 0-based start offset of block b.
    pub fn offset(&self, b: usize) -> usize {
        self.parts[..b].iter().sum()
    }

    /// Members of the parabolic subgroup S_lambda.
    pub fn parabolic(&self, d: usize) -> Vec<Permutation> {
        assert_eq!(self.total(), d);
        let mut group = vec![Permutation::identity(d)];
        for (b, &p) in self.parts.iter().enumerate() {
            let off = self.offset(b);
            let mut next = Vec::new();
            for w in &group {
                for u in Permutation::all(p) {
                    let mut im = w.images.clone();
                    let orig: Vec<usize> = (0..p).map(|i| w.images[off + i]).collect();
                    for i in 0..p {
                        im[off + i] = orig[u.images[i]];
                    }
                    next.push(Permutation { images: im });
                }
            }
            group = next;
            group.sort();
            group.dedup();
        }
        group
    }

    /// Longest element w_lambda of the parabolic.
    pub fn longest(&self, d: usize) -> Permutation {
        let mut im: Vec<usize> = (0..d).collect();
        for (b, &p) in self.parts.iter().enumerate() {
            let off = self.offset(b);
            for i in 0..p {
                im[off + i] = off + p - 1 - i;
            }
        }
        Permutation { images: im }
    }

    /// Does w lie in the parabolic S_lambda?
    pub fn contains(&self, w: &Permutation) -> bool {
        w.images
            .iter()
            .enumerate()
            .all(|(i, &x)| self.block_of(i) == self.block_of(x))
    }

    /// All compositions of d.
    pub fn all(d: usize) -> Vec<Composition> {
        if d == 0 {
            return vec![Composition { parts: vec![] }];
        }
        let mut out = Vec::new();
        for first in 1..=d {
            for rest in Composition::all(d - first) {
                let mut parts = vec![first];
                parts.extend(rest.parts);
                out.push(Composition { parts });
            }
        }
        out
    }

    pub fn one_block(d: usize) -> Composition {
        if d == 0 {
            Composition { parts: vec![] }
        } else {
            Composition { parts: vec![d] }
        }
    }

    pub fn finest(d: usize) -> Composition {
        Composition { parts: vec![1; d] }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An (level+1)-tuple of compositions with totals summing to d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiComposition {
    pub comps: Vec<Composition>,
}

impl MultiComposition {
    pub fn new(comps: Vec<Composition>) -> Self {
        MultiComposition { comps }
    }

    pub fn from_single(c: Composition) -> Self {
        MultiComposition { comps: vec![c] }
    }

    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn total(&self) -> usize {
        self.comps.iter().map(|c| c.total()).sum()
    }

    /// Concatenation of the components.
    pub fn concat(&self) -> Composition {
        let mut parts = Vec::new();
        for c in &self.comps {
            parts.extend(c.parts.iter().copied());
        }
        Composition { parts }
    }

    /// The colour sequence: blacks of component 0, red, blacks of
    /// component 1, red, ...
    pub fn colors(&self) -> ColorSeq {
        let mut v = Vec::new();
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                v.push(true);
            }
            v.extend(std::iter::repeat(false).take(c.total()));
        }
        ColorSeq { reds: v }
    }

    /// Start offset (0-based, black indices) of part r of component k.
    pub fn part_offset(&self, k: usize, r: usize) -> usize {
        let before: usize = self.comps[..k].iter().map(|c| c.total()).sum();
        before + self.comps[k].offset(r)
    }

    /// All (level+1)-compositions of d.
    pub fn all(d: usize, level: usize) -> Vec<MultiComposition> {
        fn rec(d: usize, comps_left: usize) -> Vec<Vec<Composition>> {
            if comps_left == 0 {
                return if d == 0 { vec![vec![]] } else { vec![] };
            }
            let mut out = Vec::new();
            for first_total in 0..=d {
                for first in Composition::all(first_total) {
                    for rest in rec(d - first_total, comps_left - 1) {
                        let mut v = vec![first.clone()];
                        v.extend(rest);
                        out.push(v);
                    }
                }
            }
            out
        }
        rec(d, level + 1).into_iter().map(MultiComposition::new).collect()
    }

    /// Splits of this multicomposition: refine one part of one component.
    pub fn splits(&self) -> Vec<(MultiComposition, usize, usize)> {
        let mut out = Vec::new();
        for (k, c) in self.comps.iter().enumerate() {
            for (r, &p) in c.parts.iter().enumerate() {
                for a in 1..p {
                    let mut parts = c.parts.clone();
                    parts[r] = a;
                    parts.insert(r + 1, p - a);
                    let mut comps = self.comps.clone();
                    comps[k] = Composition { parts };
                    out.push((MultiComposition { comps }, k, r));
                }
            }
        }
        out
    }

    /// Left crossings: move the first part of component t to the end of
    /// component t-1. Returns (result, t).
    pub fn left_crossings(&self) -> Vec<(MultiComposition, usize)> {
        let mut out = Vec::new();
        for t in 1..self.comps.len() {
            if self.comps[t].is_empty() {
                continue;
            }
            let mut comps = self.comps.clone();
            let moved = comps[t].parts.remove(0);
            comps[t - 1].parts.push(moved);
            out.push((MultiComposition { comps }, t));
        }
        out
    }
}

impl fmt::Display for MultiComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join("|"))
    }
}

/// A red/black colour sequence with exactly `level` reds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSeq {
    /// true = red, false = black.
    pub reds: Vec<bool>,
}

impl ColorSeq {
    pub fn new(reds: Vec<bool>) -> Self {
        ColorSeq { reds }
    }

    pub fn len(&self) -> usize {
        self.reds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reds.is_empty()
    }

    pub fn level(&self) -> usize {
        self.reds.iter().filter(|&&r| r).count()
    }

    pub fn rank(&self) -> usize {
        self.len() - self.level()
    }

    pub fn is_red(&self, pos: usize) -> bool {
        self.reds[pos]
    }

    /// The sequence with all reds first: omega.
    pub fn omega(level: usize, d: usize) -> Self {
        let mut reds = vec![true; level];
        reds.extend(vec![false; d]);
        ColorSeq { reds }
    }

    /// All sequences with d blacks and `level` reds.
    pub fn all(level: usize, d: usize) -> Vec<ColorSeq> {
        fn rec(level: usize, d: usize) -> Vec<Vec<bool>> {
            if level == 0 {
                return vec![vec![false; d]];
            }
            if d == 0 {
                return vec![vec![true; level]];
            }
            let mut out = Vec::new();
            for mut v in rec(level - 1, d) {
                v.insert(0, true);
                out.push(v);
            }
            for mut v in rec(level, d - 1) {
                v.insert(0, false);
                out.push(v);
            }
            out
        }
        rec(level, d).into_iter().map(|v| ColorSeq { reds: v }).collect()
    }

    /// Black index (0-based) of the black strand at position pos.
    pub fn black_index(&self, pos: usize) -> Option<usize> {
        if self.reds[pos] {
            return None;
        }
        Some(self.reds[..pos].iter().filter(|&&r| !r).count())
    }

    /// Red index (0-based) of the red strand at position pos.
    pub fn red_index(&self, pos: usize) -> Option<usize> {
        if !self.reds[pos] {
            return None;
        }
        Some(self.reds[..pos].iter().filter(|&&r| r).count())
    }

    /// Position (0-based) of the k-th black strand (0-based k).
    pub fn black_position(&self, k: usize) -> usize {
        self.reds
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .nth(k)
            .expect("black index in range")
            .0
    }

    /// Position (0-based) of the k-th red strand (0-based k).
    pub fn red_position(&self, k: usize) -> usize {
        self.reds
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .nth(k)
            .expect("red index in range")
            .0
    }

    /// Number of reds among positions 0..=pos.
    pub fn reds_through(&self, pos: usize) -> usize {
        self.reds[..=pos].iter().filter(|&&r| r).count()
    }

    /// Applies a position permutation: result_(pi(m)) = self_m.
    pub fn apply(&self, pi: &Permutation) -> ColorSeq {
        let mut v = vec![false; self.len()];
        for (m, &r) in self.reds.iter().enumerate() {
            v[pi.images[m]] = r;
        }
        ColorSeq { reds: v }
    }

    pub fn swap(&self, pos: usize) -> ColorSeq {
        let mut v = self.reds.clone();
        v.swap(pos, pos + 1);
        ColorSeq { reds: v }
    }
}

impl fmt::Display for ColorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.reds {
            write!(f, "{}", if r { 'r' } else { 'b' })?;
        }
        Ok(())
    }
}

/// A block-to-block colored permutation: black permutation w together with
/// source and target colour sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPermutation {
    pub target: ColorSeq,
    pub source: ColorSeq,
    pub black: Permutation,
}

impl ColoredPermutation {
    pub fn new(target: ColorSeq, source: ColorSeq, black: Permutation) -> Result<Self> {
        if target.len() != source.len()
            || target.level() != source.level()
            || black.n() != source.rank()
        {
            return Err(Error::IncompatibleSequences);
        }
        Ok(ColoredPermutation { target, source, black })
    }

    pub fn identity(c: &ColorSeq) -> Self {
        ColoredPermutation {
            target: c.clone(),
            source: c.clone(),
            black: Permutation::identity(c.rank()),
        }
    }

    /// The induced full permutation pi(target, source, black) on positions:
    /// the k-th red of source goes to the k-th red of target, the t-th black
    /// goes to the black(t)-th black of target.
    pub fn full_permutation(&self) -> Permutation {
        let n = self.source.len();
        let mut im = vec![0; n];
        for pos in 0..n {
            if let Some(k) = self.source.red_index(pos) {
                im[pos] = self.target.red_position(k);
            } else {
                let t = self.source.black_index(pos).unwrap();
                im[pos] = self.target.black_position(self.black.images[t]);
            }
        }
        Permutation { images: im }
    }

    pub fn compose(&self, other: &ColoredPermutation) -> Result<ColoredPermutation> {
        if self.source != other.target {
            return Err(Error::BlockMismatch(format!(
                "{} vs {}",
                self.source, other.target
            )));
        }
        Ok(ColoredPermutation {
            target: self.target.clone(),
            source: other.source.clone(),
            black: self.black.compose(&other.black),
        })
    }
}

// ---------------------------------------------------------------------------
// Double cosets
// ---------------------------------------------------------------------------

/// Is w the minimal-length representative of S_lambda w S_mu? Equivalent to:
/// w is increasing on mu-blocks and w^-1 is increasing on lambda-blocks.
pub fn is_min_double_coset_rep(w: &Permutation, lambda: &Composition, mu: &Composition) -> bool {
    let d = w.n();
    for i in 0..d.saturating_sub(1) {
        if mu.block_of(i) == mu.block_of(i + 1) && w.images[i] > w.images[i + 1] {
            return false;
        }
    }
    let winv = w.inverse();
    for i in 0..d.saturating_sub(1) {
        if lambda.block_of(i) == lambda.block_of(i + 1) && winv.images[i] > winv.images[i + 1] {
            return false;
        }
    }
    true
}

/// Minimal-length double coset representatives D_{lambda,mu}, optionally
/// restricted to an ambient parabolic S_nu.
pub fn coset_reps(
    lambda: &Composition,
    mu: &Composition,
    ambient: Option<&Composition>,
) -> Result<Vec<Permutation>> {
    let d = lambda.total();
    if mu.total() != d {
        return Err(Error::NotSubgroup(format!("{lambda} and {mu} have different totals")));
    }
    if let Some(nu) = ambient {
        if nu.total() != d {
            return Err(Error::NotSubgroup(format!("ambient {nu} has wrong total")));
        }
        // S_lambda, S_mu must be subgroups of S_nu: each nu-block is a union
        // of lambda-blocks (and of mu-blocks).
        for c in [lambda, mu] {
            let mut pos = 0;
            for &p in &c.parts {
                if nu.block_of(pos) != nu.block_of(pos + p - 1) {
                    return Err(Error::NotSubgroup(format!("{c} not inside {nu}")));
                }
                pos += p;
            }
        }
    }
    let mut out = Vec::new();
    for w in Permutation::all(d) {
        if let Some(nu) = ambient {
            if !nu.contains(&w) {
                continue;
            }
        }
        if is_min_double_coset_rep(&w, lambda, mu) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Minimal representatives of the right cosets S_lambda \ S_d: w with
/// w^-1 increasing on lambda-blocks.
pub fn right_coset_reps(lambda: &Composition, d: usize) -> Vec<Permutation> {
    coset_reps(lambda, &Composition::finest(d), None).expect("valid")
}

/// Minimal representatives of the left cosets S_d / S_mu.
pub fn left_coset_reps(mu: &Composition, d: usize) -> Vec<Permutation> {
    coset_reps(&Composition::finest(d), mu, None).expect("valid")
}

/// For w in D_{lambda,mu}, the composition lambda cap w(mu) with parabolic
/// S_lambda cap w S_mu w^-1: i, i+1 in one block iff they are in one
/// lambda-block and w^-1(i), w^-1(i+1) are in one mu-block.
pub fn intersect_parabolic(
    lambda: &Composition,
    mu: &Composition,
    w: &Permutation,
) -> Result<Composition> {
    if !is_min_double_coset_rep(w, lambda, mu) {
        return Err(Error::NotMinimalRep);
    }
    let d = lambda.total();
    let winv = w.inverse();
    let mut parts = Vec::new();
    let mut run = if d > 0 { 1 } else { 0 };
    for i in 0..d.saturating_sub(1) {
        let joined = lambda.block_of(i) == lambda.block_of(i + 1)
            && mu.block_of(winv.images[i]) == mu.block_of(winv.images[i + 1]);
        if joined {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    if run > 0 {
        parts.push(run);
    }
    Composition::new(parts)
}

/// The common refinement lambda cap mu (for w = identity).
pub fn intersect_compositions(lambda: &Composition, mu: &Composition) -> Composition {
    intersect_parabolic(lambda, mu, &Permutation::identity(lambda.total())).unwrap()
}

/// Exponent vectors in [-bound; bound]^d that are non-decreasing inside each
/// lambda-block, together with the run composition lambda cap p.
pub fn dominant_monomials(lambda: &Composition, bound: i32) -> Vec<(Vec<i32>, Composition)> {
    let d = lambda.total();
    let mut out = Vec::new();
    let mut cur = vec![-bound; d];
    loop {
        let dominant = (0..d.saturating_sub(1)).all(|i| {
            lambda.block_of(i) != lambda.block_of(i + 1) || cur[i] <= cur[i + 1]
        });
        if dominant {
            out.push((cur.clone(), lambda_cap(lambda, &cur)));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
            i += 1;
        }
    }
}

/// The composition finer than lambda whose blocks are the constancy runs of
/// the exponent vector inside lambda-blocks.
pub fn lambda_cap(lambda: &Composition, exps: &[i32]) -> Composition {
    let d = lambda.total();
    assert_eq!(exps.len(), d);
    if d == 0 {
        return Composition { parts: vec![] };
    }
    let mut parts = Vec::new();
    let mut run = 1;
    for i in 0..d - 1 {
        if lambda.block_of(i) == lambda.block_of(i + 1) && exps[i] == exps[i + 1] {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    Composition { parts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_length() {
        let s1 = Permutation::simple(3, 1);
        let s2 = Permutation::simple(3, 2);
        let w = s1.compose(&s2); // s1 s2 : 1->2->... check one-line
        assert_eq!(w.images, vec![1, 2, 0]);
        assert_eq!(w.length(), 2);
        assert_eq!(Permutation::longest(3).length(), 3);
    }

    #[test]
    fn reduced_word_roundtrip() {
        for w in Permutation::all(4) {
            let word = w.lex_min_reduced_word();
            assert_eq!(word.len(), w.length());
            let mut v = Permutation::identity(4);
            for &k in &word {
                v = v.compose(&Permutation::simple(4, k));
            }
            assert_eq!(v, w);
        }
    }

    #[test]
    fn block_swap_shape() {
        let w = Permutation::block_swap(2, 1);
        assert_eq!(w.images, vec![1, 2, 0]);
        assert_eq!(w.length(), 2);
    }

    #[test]
    fn double_cosets_small() {
        let l11 = Composition::new(vec![1, 1]).unwrap();
        let reps = coset_reps(&l11, &l11, None).unwrap();
        assert_eq!(reps.len(), 2); // {e, s1}

        let l2 = Composition::new(vec![2]).unwrap();
        let reps = coset_reps(&l2, &l2, None).unwrap();
        assert_eq!(reps.len(), 1); // {e}

        // S_3 splits into the double cosets {e,s1,s2,s1s2} and {s2s1,s1s2s1},
        // so there are exactly two minimal representatives.
        let l21 = Composition::new(vec![2, 1]).unwrap();
        let l12 = Composition::new(vec![1, 2]).unwrap();
        let reps = coset_reps(&l21, &l12, None).unwrap();
        assert_eq!(reps.len(), 2);
        // one-sided cosets for comparison
        assert_eq!(right_coset_reps(&l21, 3).len(), 3);
        assert_eq!(left_coset_reps(&l12, 3).len(), 3);
    }

    /// Brute-force oracle: group every w in S_d by double coset and keep the
    /// minimal-length member of each.
    fn brute_double_coset_minima(
        lambda: &Composition,
        mu: &Composition,
        d: usize,
    ) -> Vec<Permutation> {
        let sl = lambda.parabolic(d);
        let sm = mu.parabolic(d);
        let mut seen: Vec<(Vec<Permutation>, Permutation)> = Vec::new();
        for w in Permutation::all(d) {
            if seen.iter().any(|(coset, _)| coset.contains(&w)) {
                continue;
            }
            let mut coset = Vec::new();
            for x in &sl {
                for z in &sm {
                    coset.push(x.compose(&w).compose(z));
                }
            }
            coset.sort();
            coset.dedup();
            let min = coset
                .iter()
                .min_by_key(|u| (u.length(), u.images.clone()))
                .unwrap()
                .clone();
            seen.push((coset, min));
        }
        let mut mins: Vec<Permutation> = seen.into_iter().map(|(_, m)| m).collect();
        mins.sort();
        mins
    }

    #[test]
    fn double_coset_reps_match_brute_force() {
        for d in 1..=4 {
            for lambda in Composition::all(d) {
                for mu in Composition::all(d) {
                    let mut fast = coset_reps(&lambda, &mu, None).unwrap();
                    fast.sort();
                    let brute = brute_double_coset_minima(&lambda, &mu, d);
                    assert_eq!(fast, brute, "lambda={lambda} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn parabolic_intersection_matches_brute_force() {
        for d in 1..=4usize {
            for lambda in Composition::all(d) {
                for mu in Composition::all(d) {
                    for w in coset_reps(&lambda, &mu, None).unwrap() {
                        let cap = intersect_parabolic(&lambda, &mu, &w).unwrap();
                        let gen_cap: Vec<Permutation> = cap.parabolic(d);
                        // brute force: S_lambda cap w S_mu w^-1
                        let sl = lambda.parabolic(d);
                        let sm = mu.parabolic(d);
                        let winv = w.inverse();
                        let mut brute: Vec<Permutation> = sl
                            .into_iter()
                            .filter(|x| sm.contains(&winv.compose(x).compose(&w)))
                            .collect();
                        brute.sort();
                        let mut fast = gen_cap;
                        fast.sort();
                        assert_eq!(fast, brute, "lambda={lambda} mu={mu} w={w}");
                    }
                }
            }
        }
    }

    #[test]
    fn intersect_examples() {
        // lambda = (2), mu = (1,1), w = e -> (1,1)
        let l = Composition::new(vec![2]).unwrap();
        let m = Composition::new(vec![1, 1]).unwrap();
        let w = Permutation::identity(2);
        assert_eq!(intersect_parabolic(&l, &m, &w).unwrap().parts, vec![1, 1]);

        // lambda = (2,1), mu = (1,2), w = e -> (1,1,1)
        let l = Composition::new(vec![2, 1]).unwrap();
        let m = Composition::new(vec![1, 2]).unwrap();
        let w = Permutation::identity(3);
        assert_eq!(intersect_parabolic(&l, &m, &w).unwrap().parts, vec![1, 1, 1]);

        // lambda = mu = (d), w = e -> (d)
        let l = Composition::new(vec![3]).unwrap();
        assert_eq!(
            intersect_parabolic(&l, &l, &Permutation::identity(3)).unwrap().parts,
            vec![3]
        );
    }

    #[test]
    fn dominant_monomial_examples() {
        // lambda = (2,3): exponents (3,3,2,6,6) are dominant with runs (2,1,2)
        let l = Composition::new(vec![2, 3]).unwrap();
        assert_eq!(lambda_cap(&l, &[3, 3, 2, 6, 6]).parts, vec![2, 1, 2]);

        // lambda = (1,..,1), bound 0: single all-zero vector
        let l = Composition::finest(3);
        assert_eq!(dominant_monomials(&l, 0).len(), 1);

        // lambda = (2), bound 1: pairs a1 <= a2 in {-1,0,1}: 6 of them
        let l = Composition::new(vec![2]).unwrap();
        assert_eq!(dominant_monomials(&l, 1).len(), 6);
    }

    #[test]
    fn unique_xwz_factorization() {
        // every w in S_d factors uniquely as x * w0 * z with lengths adding,
        // w0 in D_{mu,lambda}, x in S_mu, z in D^lambda_{lambda cap w0^-1(mu), empty}
        for d in 1..=4usize {
            for lambda in Composition::all(d) {
                for mu in Composition::all(d) {
                    let mut seen: Vec<Permutation> = Vec::new();
                    for w0 in coset_reps(&mu, &lambda, None).unwrap() {
                        let cap = intersect_parabolic(&lambda, &mu, &w0.inverse())
                            .expect("w0^-1 is a minimal rep for (lambda,mu)");
                        let zs: Vec<Permutation> =
                            coset_reps(&cap, &Composition::finest(d), Some(&lambda)).unwrap();
                        for x in mu.parabolic(d) {
                            for z in &zs {
                                let w = x.compose(&w0).compose(z);
                                assert_eq!(
                                    w.length(),
                                    x.length() + w0.length() + z.length(),
                                    "lengths must add"
                                );
                                seen.push(w);
                            }
                        }
                    }
                    let total = seen.len();
                    seen.sort();
                    seen.dedup();
                    assert_eq!(seen.len(), total, "factorization not unique");
                    let mut dfact = 1usize;
                    for k in 2..=d {
                        dfact *= k;
                    }
                    assert_eq!(total, dfact, "lambda={lambda} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn colored_permutation_reds_keep_order() {
        let c = ColorSeq::new(vec![false, true, false]);
        let b = ColorSeq::new(vec![true, false, false]);
        let g = ColoredPermutation::new(b.clone(), c.clone(), Permutation::identity(2)).unwrap();
        let pi = g.full_permutation();
        // red at position 1 (0-based) of c goes to position 0 of b
        assert_eq!(pi.images[1], 0);
        // blacks keep their relative order
        assert_eq!(pi.images[0], 1);
        assert_eq!(pi.images[2], 2);
        assert_eq!(c.apply(&pi), b);
    }

    #[test]
    fn colored_compose_identity() {
        let c = ColorSeq::new(vec![true, false]);
        let id = ColoredPermutation::identity(&c);
        assert_eq!(id.compose(&id).unwrap(), id);
        let other = ColorSeq::new(vec![false, true]);
        let g = ColoredPermutation::new(other.clone(), c.clone(), Permutation::identity(1)).unwrap();
        let h = ColoredPermutation::new(c.clone(), other.clone(), Permutation::identity(1)).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh, ColoredPermutation::identity(&other));
        assert!(g.compose(&g).is_err());
    }

    #[test]
    fn multicomposition_enumeration() {
        // level 0: plain compositions
        assert_eq!(MultiComposition::all(3, 0).len(), Composition::all(3).len());
        // colour sequence of ((1)|(2,1)|(1,2)) has reds at positions 1 and 4
        let mc = MultiComposition::new(vec![
            Composition::new(vec![1]).unwrap(),
            Composition::new(vec![2, 1]).unwrap(),
            Composition::new(vec![1, 2]).unwrap(),
        ]);
        assert_eq!(format!("{}", mc.colors()), "brbbbrbbb");
        assert_eq!(mc.concat().parts, vec![1, 2, 1, 1, 2]);
    }
}
