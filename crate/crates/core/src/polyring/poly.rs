use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::coeff::{Coeff, Rational};
use super::int::Int;
use super::var::{Family, Monomial, Var};

/// Sparse polynomial with exact coefficients. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C: Coeff = Int> {
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = Poly<Rational>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn int(v: i64) -> Self {
        Poly::constant(C::from_i64(v))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `v_a - v_b`.
    pub fn difference(a: Var, b: Var) -> Self {
        &Poly::var(a) - &Poly::var(b)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one_value()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Number of terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    /// Maximal weighted degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Keeps only the terms whose monomial satisfies `pred`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|p| p.0)).collect()
    }

    pub fn has_family(&self, family: Family) -> bool {
        self.terms
            .keys()
            .any(|m| m.iter().any(|(v, _)| v.family() == family))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul_ref(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.mul_ref(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| c.to_rational())
    }

    /// Converts from rational coefficients, failing on any non-representable one.
    pub fn from_rational(p: &QPoly) -> Option<Self> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            out.add_term(m.clone(), C::from_rational(c)?);
        }
        Some(out)
    }

    /// Simultaneous substitution; variables without an assignment are kept.
    pub fn substitute(&self, assignment: &HashMap<Var, Poly<C>>) -> Self {
        let mut powers: HashMap<(Var, u32), Poly<C>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    None => kept = kept.mul(&Monomial::power(v, e)),
                    Some(target) => {
                        let pw = powers
                            .entry((v, e))
                            .or_insert_with(|| target.pow(e))
                            .clone();
                        acc = &acc * &pw;
                    }
                }
            }
            out += &acc.mul_monomial(&kept, &C::one());
        }
        out
    }

    /// Renames variables (the map may merge variables).
    pub fn rename<F: Fn(Var) -> Var>(&self, f: F) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        self.rename(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Sets every variable accepted by `pred` to zero.
    pub fn kill<F: Fn(Var) -> bool>(&self, pred: F) -> Self {
        self.filter(|m| !m.iter().any(|(v, _)| pred(v)))
    }

    /// `(f - f|_{a<->b}) / (v_a - v_b)`, computed monomial by monomial.
    pub fn divided_difference(&self, a: Var, b: Var) -> Self {
        assert!(a != b, "divided difference needs two distinct variables");
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (p, rest) = m.take(a);
            let (r, rest) = rest.take(b);
            let (lo, gap, sign) = match p.cmp(&r) {
                Ordering::Equal => continue,
                Ordering::Greater => (r, p - r, false),
                Ordering::Less => (p, r - p, true),
            };
            let c = if sign { c.neg_ref() } else { c.clone() };
            for k in 0..gap {
                let mono = rest.mul(&Monomial::from_pairs([
                    (a, lo + k),
                    (b, lo + gap - 1 - k),
                ]));
                out.add_term(mono, c.clone());
            }
        }
        out
    }

    /// Groups terms by their part in the variables accepted by `pred`;
    /// the values are the cofactors in the remaining variables.
    pub fn coefficients_in<F: Fn(Var) -> bool>(&self, pred: F) -> BTreeMap<Monomial, Poly<C>> {
        let mut out: BTreeMap<Monomial, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(&pred);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out
    }

    /// Leading term in lexicographic order (`x1 > x2 > ... > y1 > ... > t`).
    pub fn lex_leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<C>) -> Option<Self> {
        let (lm, lc) = d.lex_leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.lex_leading() {
            let qm = lm.div_into(m)?;
            let qc = c.div_exact_ref(&lc)?;
            rem -= &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides out the given factors as often as possible, in order.
    /// Returns the extracted factors and the remaining cofactor.
    pub fn extract_factors(&self, candidates: &[Poly<C>]) -> (Vec<Poly<C>>, Poly<C>) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        if rest.is_zero() {
            return (found, rest);
        }
        for cand in candidates {
            if cand.is_constant() {
                continue;
            }
            while let Some(q) = rest.div_exact(cand) {
                found.push(cand.clone());
                rest = q;
            }
        }
        (found, rest)
    }

    /// Terms in printing order: graded lex, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, compact: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (plus, minus) = if compact { ("+", "-") } else { (" + ", " - ") };
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, "{minus}")?,
                (_, false) => write!(f, "{plus}")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one_value() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }

    /// Display without spaces around `+`/`-`, used inside factored output.
    pub fn compact(&self) -> Compact<'_, C> {
        Compact(self)
    }
}

pub struct Compact<'a, C: Coeff>(&'a Poly<C>);

impl<C: Coeff> fmt::Display for Compact<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, true)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Prints `factors * rest` as `(y1-y4)*(y1-y6)`, folding a constant
/// cofactor into a leading coefficient.
pub fn format_factored<C: Coeff>(factors: &[Poly<C>], rest: &Poly<C>) -> String {
    if factors.is_empty() {
        return rest.to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut prefix = String::new();
    if rest.is_constant() {
        let c = rest.constant_term();
        if c.is_negative() {
            prefix.push('-');
        }
        let abs = if c.is_negative() { c.neg_ref() } else { c };
        if !abs.is_one_value() {
            parts.push(abs.to_string());
        }
    } else if rest.len() == 1 {
        parts.push(rest.to_string());
    } else {
        parts.push(format!("({})", rest.compact()));
    }
    for fac in factors {
        if fac.len() == 1 {
            parts.push(fac.compact().to_string());
        } else {
            parts.push(format!("({})", fac.compact()));
        }
    }
    format!("{prefix}{}", parts.join("*"))
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (k, a) in &large.terms {
                out.add_term(m.mul(k), c.mul_ref(a));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Poly<C>>>(iter: I) -> Poly<C> {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<C: Coeff> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Poly<C>>>(iter: I) -> Poly<C> {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<C: Coeff> From<Var> for Poly<C> {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

/// Substitutes `y_i -> a_i + ... + a_{n-1} + y_n`, so every difference
/// `y_i - y_j` becomes a sum of simple roots `a_k = y_k - y_{k+1}`.
pub fn to_alpha_coordinates<C: Coeff>(f: &Poly<C>, n: usize) -> Poly<C> {
    let mut map = HashMap::new();
    for i in 1..=n {
        let mut p = Poly::var(Var::y(n));
        for k in i..n {
            p += &Poly::var(Var::alpha(k));
        }
        map.insert(Var::y(i), p);
    }
    f.substitute(&map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(Var::x(i))
    }
    fn y(i: usize) -> Poly {
        Poly::var(Var::y(i))
    }

    #[test]
    fn divided_difference_examples() {
        let (a, b) = (Var::y(1), Var::y(2));
        assert_eq!(y(1).divided_difference(a, b), Poly::one());
        assert!((&y(1) * &y(2)).divided_difference(a, b).is_zero());
        assert_eq!(y(1).pow(2).divided_difference(a, b), &y(1) + &y(2));
        assert_eq!(y(2).divided_difference(a, b), Poly::int(-1));
    }

    #[test]
    fn exact_division_and_factors() {
        let f = &(&y(1) - &y(4)) * &(&y(1) - &y(6));
        let cands = vec![&y(1) - &y(4), &y(1) - &y(6), &y(2) - &y(3)];
        let (facs, rest) = f.extract_factors(&cands);
        assert_eq!(facs.len(), 2);
        assert!(rest.is_one());
        assert_eq!(format_factored(&facs, &rest), "(y1-y4)*(y1-y6)");
        assert_eq!(f.div_exact(&(&y(2) - &y(3))), None);
        let g = &f * &Poly::int(-2);
        let (facs, rest) = g.extract_factors(&cands);
        assert_eq!(format_factored(&facs, &rest), "-2*(y1-y4)*(y1-y6)");
    }

    #[test]
    fn alpha_rewrite() {
        let f = &y(1) - &y(4);
        let a = to_alpha_coordinates(&f, 6);
        let expect: Poly = (1..=3).map(|k| Poly::var(Var::alpha(k))).sum();
        assert_eq!(a, expect);
    }

    #[test]
    fn printing_order() {
        let f = &(&x(1).pow(2) * &y(3)) - &(&x(1) * &Poly::var(Var::t())).scale(&Int::from(3));
        let f = &f + &Poly::one();
        assert_eq!(f.to_string(), "x1^2*y3 - 3*x1*t + 1");
        assert_eq!((-&x(2)).to_string(), "-x2");
        assert_eq!(Poly::<Int>::zero().to_string(), "0");
    }

    #[test]
    fn substitution_examples() {
        let mut m = HashMap::new();
        m.insert(Var::x(1), y(1));
        m.insert(Var::x(2), y(2));
        assert_eq!((&x(1) * &x(2)).substitute(&m), &y(1) * &y(2));
        let f = &y(1) - &y(4);
        assert_eq!(f.substitute(&HashMap::new()), f);
    }
}
