//! Monotone maps between finite ordinals and words in cofaces and codegeneracies.
//!
//! The object `[n]` (for `n >= -1`) has `n + 1` elements, so `[-1]` is empty.
//! Sizes are used internally; degrees appear only in constructors and in the
//! textual word syntax.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// A weakly increasing map `{0..dom} -> {0..cod}` between finite ordinals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    values: Vec<usize>,
    cod: usize,
}

/// One coface or codegeneracy, indexed as in the simplicial identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    /// Coface `d^k`, skipping `k` in the codomain.
    Face(usize),
    /// Codegeneracy `s^k`, hitting `k` twice.
    Degen(usize),
}

impl Op {
    /// Index `k` of the operator.
    pub fn index(self) -> usize {
        match self {
            Op::Face(k) | Op::Degen(k) => k,
        }
    }
}

impl MonotoneMap {
    /// Builds a map from its value list, checking monotonicity and range.
    pub fn new(values: Vec<usize>, cod: usize) -> Result<Self, Error> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone(format!("{values:?}")));
        }
        if values.iter().any(|&v| v >= cod) {
            return Err(Error::OutOfRange(format!("{values:?} into size {cod}")));
        }
        Ok(MonotoneMap { values, cod })
    }

    pub(crate) fn from_parts(values: Vec<usize>, cod: usize) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v < cod));
        MonotoneMap { values, cod }
    }

    /// Identity on an ordinal with `size` elements.
    pub fn identity(size: usize) -> Self {
        MonotoneMap {
            values: (0..size).collect(),
            cod: size,
        }
    }

    /// Coface `d^k : [n-1] -> [n]`.
    pub fn coface(n: usize, k: usize) -> Self {
        assert!(k <= n, "coface d^{k} needs k <= {n}");
        let values = (0..n).map(|x| if x < k { x } else { x + 1 }).collect();
        MonotoneMap { values, cod: n + 1 }
    }

    /// Codegeneracy `s^k : [n+1] -> [n]`.
    pub fn codegeneracy(n: usize, k: usize) -> Self {
        assert!(k <= n, "codegeneracy s^{k} needs k <= {n}");
        let values = (0..n + 2).map(|x| if x <= k { x } else { x - 1 }).collect();
        MonotoneMap { values, cod: n + 1 }
    }

    /// The operator as a map out of the ordinal of size `dom`.
    pub fn of_op(op: Op, dom: usize) -> Result<Self, Error> {
        match op {
            Op::Face(k) if k <= dom => Ok(Self::coface(dom, k)),
            Op::Degen(k) if dom >= 2 && k + 2 <= dom => Ok(Self::codegeneracy(dom - 2, k)),
            _ => Err(Error::OutOfRange(format!(
                "{op:?} on an ordinal of size {dom}"
            ))),
        }
    }

    /// Number of elements of the domain.
    pub fn dom(&self) -> usize {
        self.values.len()
    }

    /// Number of elements of the codomain.
    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.values.len() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if i == 0 || v != self.values[i - 1] {
                hit += 1;
            }
        }
        hit == self.cod
    }

    /// Restriction to the initial segment of the domain with `len` elements.
    pub fn restrict_prefix(&self, len: usize) -> Vec<usize> {
        self.values[..len].to_vec()
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]:{}->{}", self.values.len(), self.cod)
    }
}

/// `g ∘ f`.
pub fn compose_monotone(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap, Error> {
    if f.cod != g.dom() {
        return Err(Error::NotComposable(format!("{g} after {f}")));
    }
    Ok(compose_unchecked(g, f))
}

pub(crate) fn compose_unchecked(g: &MonotoneMap, f: &MonotoneMap) -> MonotoneMap {
    MonotoneMap {
        values: f.values.iter().map(|&x| g.values[x]).collect(),
        cod: g.cod,
    }
}

fn degree_size(n: i64) -> usize {
    assert!(n >= -1, "ordinals start at [-1]");
    (n + 1) as usize
}

/// All monotone maps `[m] -> [n]` in lexicographic order of value lists.
pub fn enumerate_monotone(m: i64, n: i64) -> Vec<MonotoneMap> {
    enumerate_sizes(degree_size(m), degree_size(n))
}

pub(crate) fn enumerate_sizes(dom: usize, cod: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(dom);
    fn go(dom: usize, cod: usize, lo: usize, current: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if current.len() == dom {
            out.push(MonotoneMap {
                values: current.clone(),
                cod,
            });
            return;
        }
        for v in lo..cod {
            current.push(v);
            go(dom, cod, v, current, out);
            current.pop();
        }
    }
    go(dom, cod, 0, &mut current, &mut out);
    out
}

/// Canonical epi-mono factorization.
///
/// Returns the codegeneracy indices and the coface indices, each in the order
/// they are applied: first the codegeneracies (strictly decreasing), then the
/// cofaces (strictly increasing).
pub fn epi_mono_factor(f: &MonotoneMap) -> (Vec<usize>, Vec<usize>) {
    let v = &f.values;
    let mut degens: Vec<usize> = (0..v.len().saturating_sub(1))
        .filter(|&k| v[k] == v[k + 1])
        .collect();
    degens.reverse();
    let mut faces = Vec::new();
    let mut it = v.iter().peekable();
    for y in 0..f.cod {
        while it.peek().is_some_and(|&&x| x < y) {
            it.next();
        }
        if it.peek() != Some(&&y) {
            faces.push(y);
        }
    }
    (degens, faces)
}

/// The factorization as a word of operators in application order.
pub fn factor_word(f: &MonotoneMap) -> Vec<Op> {
    let (degens, faces) = epi_mono_factor(f);
    degens
        .into_iter()
        .map(Op::Degen)
        .chain(faces.into_iter().map(Op::Face))
        .collect()
}

/// Evaluates operators applied in order, starting from an ordinal of size `dom`.
pub fn eval_ops(ops: &[Op], dom: usize) -> Result<MonotoneMap, Error> {
    let mut acc = MonotoneMap::identity(dom);
    for &op in ops {
        let step = MonotoneMap::of_op(op, acc.cod)?;
        acc = compose_unchecked(&step, &acc);
    }
    Ok(acc)
}

/// Ordinal sum of maps: block concatenation with the second block offset.
pub fn ordinal_sum(f: &MonotoneMap, g: &MonotoneMap) -> MonotoneMap {
    let mut values = f.values.clone();
    values.extend(g.values.iter().map(|&x| x + f.cod));
    MonotoneMap {
        values,
        cod: f.cod + g.cod,
    }
}

/// Ordinal sum of objects given by degree: `[m] ⊕ [n] = [m+1+n]`.
pub fn ordinal_sum_degree(m: i64, n: i64) -> i64 {
    m + 1 + n
}

/// Adds a new least element to domain and codomain, fixed by the map.
pub fn free_bottom(f: &MonotoneMap) -> MonotoneMap {
    let mut values = Vec::with_capacity(f.values.len() + 1);
    values.push(0);
    values.extend(f.values.iter().map(|&x| x + 1));
    MonotoneMap {
        values,
        cod: f.cod + 1,
    }
}

/// Reverses the order on both sides: `x ↦ cod-1-f(dom-1-x)`.
pub fn opposite(f: &MonotoneMap) -> MonotoneMap {
    let n = f.values.len();
    let values = (0..n).map(|x| f.cod - 1 - f.values[n - 1 - x]).collect();
    MonotoneMap { values, cod: f.cod }
}

/// Formats a map as a word such as `d1.s0@[2]`.
pub fn format_word(f: &MonotoneMap) -> String {
    let ops = factor_word(f);
    let mut s = String::new();
    for (i, op) in ops.iter().rev().enumerate() {
        if i > 0 {
            s.push('.');
        }
        match op {
            Op::Face(k) => s.push_str(&format!("d{k}")),
            Op::Degen(k) => s.push_str(&format!("s{k}")),
        }
    }
    s.push_str(&format!("@[{}]", f.dom() as i64 - 1));
    s
}

/// Parses either a generator word (`d2.s0@[3]`) or a raw map (`[0,0,2]:3->3`).
pub fn parse_map(text: &str) -> Result<MonotoneMap, Error> {
    let text = text.trim();
    if let Some((vals, sizes)) = text.split_once(':') {
        let (dom, cod) = sizes
            .split_once("->")
            .ok_or_else(|| Error::Parse(text.into()))?;
        let dom: usize = dom.trim().parse().map_err(|_| Error::Parse(text.into()))?;
        let cod: usize = cod.trim().parse().map_err(|_| Error::Parse(text.into()))?;
        let inner = vals
            .trim()
            .strip_prefix('[')
            .and_then(|v| v.strip_suffix(']'));
        let inner = inner.ok_or_else(|| Error::Parse(text.into()))?;
        let values = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(text.into()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        if values.len() != dom {
            return Err(Error::Parse(format!(
                "{text}: {} values for size {dom}",
                values.len()
            )));
        }
        return MonotoneMap::new(values, cod);
    }
    let (word, obj) = text
        .split_once('@')
        .ok_or_else(|| Error::Parse(text.into()))?;
    let obj = obj
        .trim()
        .strip_prefix('[')
        .and_then(|o| o.strip_suffix(']'));
    let n: i64 = obj
        .and_then(|o| o.trim().parse().ok())
        .ok_or_else(|| Error::Parse(text.into()))?;
    if n < -1 {
        return Err(Error::Parse(text.into()));
    }
    let mut ops = Vec::new();
    if !word.trim().is_empty() {
        for token in word.split('.').rev() {
            ops.push(
                parse_op(token.trim()).ok_or_else(|| Error::Parse(format!("token {token:?}")))?,
            );
        }
    }
    eval_ops(&ops, degree_size(n))
}

pub(crate) fn parse_op(token: &str) -> Option<Op> {
    let (head, rest) = token.split_at(token.char_indices().nth(1).map_or(token.len(), |(i, _)| i));
    let k: usize = rest.parse().ok()?;
    match head {
        "d" => Some(Op::Face(k)),
        "s" => Some(Op::Degen(k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn all_maps(max: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        for d in 0..=max {
            for c in 0..=max {
                out.extend(enumerate_sizes(d, c));
            }
        }
        out
    }

    #[test]
    fn identity_composes_to_identity() {
        let id = MonotoneMap::identity(3);
        assert_eq!(compose_monotone(&id, &id).unwrap(), id);
    }

    #[test]
    fn two_cofaces_from_a_point() {
        let d0 = MonotoneMap::coface(1, 0);
        let d1 = MonotoneMap::coface(2, 1);
        assert_eq!(compose_monotone(&d1, &d0).unwrap().values(), &[2]);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..=5 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = compose_unchecked(
                        &MonotoneMap::coface(n, j),
                        &MonotoneMap::coface(n - 1, i),
                    );
                    let rhs = compose_unchecked(
                        &MonotoneMap::coface(n, i),
                        &MonotoneMap::coface(n - 1, j - 1),
                    );
                    assert_eq!(lhs, rhs, "d^{j} d^{i} at [{n}]");
                }
            }
        }
        for n in 0..=4 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose_unchecked(
                        &MonotoneMap::codegeneracy(n, j),
                        &MonotoneMap::codegeneracy(n + 1, i),
                    );
                    let rhs = compose_unchecked(
                        &MonotoneMap::codegeneracy(n, i),
                        &MonotoneMap::codegeneracy(n + 1, j + 1),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn noncomposable_is_an_error() {
        let a = MonotoneMap::identity(2);
        let b = MonotoneMap::identity(3);
        assert!(matches!(
            compose_monotone(&a, &b),
            Err(Error::NotComposable(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_monotone(1, 1).len(), 3);
        assert_eq!(enumerate_monotone(2, 1).len(), 4);
        assert_eq!(enumerate_monotone(-1, 3).len(), 1);
        assert_eq!(enumerate_monotone(-1, -1).len(), 1);
        assert!(enumerate_monotone(0, -1).is_empty());
        for m in 0..=5i64 {
            for n in 0..=5i64 {
                let count = enumerate_monotone(m, n).len();
                assert_eq!(count, binomial((m + n + 1) as usize, (m + 1) as usize));
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(epi_mono_factor(&MonotoneMap::identity(3)), (vec![], vec![]));
        assert_eq!(
            epi_mono_factor(&MonotoneMap::codegeneracy(0, 0)),
            (vec![0], vec![])
        );
        let f = MonotoneMap::new(vec![0, 0, 2], 3).unwrap();
        assert_eq!(epi_mono_factor(&f), (vec![0], vec![1]));
        assert_eq!(format_word(&f), "d1.s0@[2]");
    }

    #[test]
    fn factor_round_trip_is_canonical() {
        for f in all_maps(6) {
            let (degens, faces) = epi_mono_factor(&f);
            assert!(degens.windows(2).all(|w| w[0] > w[1]));
            assert!(faces.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(eval_ops(&factor_word(&f), f.dom()).unwrap(), f);
            assert_eq!(parse_map(&format_word(&f)).unwrap(), f);
            assert_eq!(parse_map(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn ordinal_sum_examples() {
        assert_eq!(ordinal_sum_degree(1, 0), 2);
        let f = ordinal_sum(&MonotoneMap::identity(1), &MonotoneMap::coface(1, 0));
        assert_eq!(f, MonotoneMap::new(vec![0, 2], 3).unwrap());
        for a in -1..=4 {
            for b in -1..=4 {
                for c in -1..=4 {
                    assert_eq!(
                        ordinal_sum_degree(ordinal_sum_degree(a, b), c),
                        ordinal_sum_degree(a, ordinal_sum_degree(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn ordinal_sum_is_functorial() {
        let maps = all_maps(3);
        for f in &maps {
            for g in maps.iter().filter(|g| g.dom() == f.cod()) {
                for f2 in maps.iter().filter(|m| m.dom() <= 2) {
                    for g2 in maps.iter().filter(|g2| g2.dom() == f2.cod()) {
                        let lhs = compose_unchecked(&ordinal_sum(g, g2), &ordinal_sum(f, f2));
                        let rhs = ordinal_sum(&compose_unchecked(g, f), &compose_unchecked(g2, f2));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn free_bottom_examples() {
        assert_eq!(
            free_bottom(&MonotoneMap::identity(1)),
            MonotoneMap::identity(2)
        );
        assert_eq!(
            free_bottom(&MonotoneMap::coface(1, 0)),
            MonotoneMap::new(vec![0, 2], 3).unwrap()
        );
        let maps = all_maps(4);
        for f in &maps {
            for g in maps.iter().filter(|g| g.dom() == f.cod()) {
                let lhs = free_bottom(&compose_unchecked(g, f));
                assert_eq!(lhs, compose_unchecked(&free_bottom(g), &free_bottom(f)));
                assert_eq!(lhs.apply(0), 0);
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_map("d9@[1]").is_err());
        assert!(parse_map("x0@[1]").is_err());
        assert!(parse_map("[1,0]:2->2").is_err());
        assert!(parse_map("[0,3]:2->2").is_err());
        assert_eq!(parse_map("@[-1]").unwrap().dom(), 0);
    }
}
