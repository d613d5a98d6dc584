use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Variable families. The declaration order is the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Z,
    /// Simple roots `a_i = y_i - y_{i+1}`, used only for re-expressed output.
    Alpha,
    /// Specialized quantum parameter `q_i`.
    Q,
    /// General quantum parameter `q_ij`, `i < j`.
    QPair,
    T,
}

impl Family {
    fn code(self) -> u16 {
        self as u16
    }

    fn from_code(c: u16) -> Family {
        match c {
            0 => Family::X,
            1 => Family::Y,
            2 => Family::Z,
            3 => Family::Alpha,
            4 => Family::Q,
            5 => Family::QPair,
            _ => Family::T,
        }
    }

    /// Degree of a variable of this family; `t` and `q` have degree 2 so the
    /// defining relations of the algebra are homogeneous.
    pub fn weight(self) -> u32 {
        match self {
            Family::Q | Family::QPair | Family::T => 2,
            _ => 1,
        }
    }

    pub fn is_central(self) -> bool {
        !matches!(self, Family::X | Family::Z)
    }
}

/// A polynomial variable, packed as `family << 12 | payload`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

impl Var {
    fn indexed(family: Family, i: usize) -> Var {
        assert!((1..=255).contains(&i), "variable index {i} out of range");
        Var(family.code() << 12 | i as u16)
    }

    pub fn x(i: usize) -> Var {
        Var::indexed(Family::X, i)
    }

    pub fn y(i: usize) -> Var {
        Var::indexed(Family::Y, i)
    }

    pub fn z(i: usize) -> Var {
        Var::indexed(Family::Z, i)
    }

    pub fn alpha(i: usize) -> Var {
        Var::indexed(Family::Alpha, i)
    }

    pub fn q(i: usize) -> Var {
        Var::indexed(Family::Q, i)
    }

    /// General `q_ij`; the pair is normalized so that `q_ij = q_ji`.
    pub fn q_pair(i: usize, j: usize) -> Var {
        assert!(i != j && i < 64 && j < 64 && i > 0 && j > 0, "bad q index ({i},{j})");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Var(Family::QPair.code() << 12 | (a as u16) << 6 | b as u16)
    }

    pub fn t() -> Var {
        Var(Family::T.code() << 12)
    }

    /// Indexed variable of the given family (not `QPair` or `T`).
    pub fn of(family: Family, i: usize) -> Var {
        match family {
            Family::QPair | Family::T => panic!("Var::of needs a singly indexed family"),
            f => Var::indexed(f, i),
        }
    }

    pub fn family(self) -> Family {
        Family::from_code(self.0 >> 12)
    }

    /// Index of a singly indexed variable.
    pub fn index(self) -> usize {
        (self.0 & 0xfff) as usize
    }

    /// Index pair of a general `q_ij`.
    pub fn pair(self) -> (usize, usize) {
        (((self.0 >> 6) & 0x3f) as usize, (self.0 & 0x3f) as usize)
    }

    pub fn weight(self) -> u32 {
        self.family().weight()
    }

    /// Parses identifiers such as `x3`, `y1`, `t`, `q2`, `q1_3`, `q_13`, `a4`, `x_2`.
    pub fn parse(name: &str) -> Option<Var> {
        let mut chars = name.chars();
        let head = chars.next()?;
        let rest: &str = chars.as_str();
        if head == 't' {
            return rest.is_empty().then(Var::t);
        }
        let family = match head {
            'x' => Family::X,
            'y' => Family::Y,
            'z' => Family::Z,
            'a' => Family::Alpha,
            'q' => Family::Q,
            _ => return None,
        };
        let parse_idx = |s: &str| -> Option<usize> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok().filter(|&i| i > 0 && i < 256)
        };
        if family == Family::Q {
            if let Some(pair) = rest.strip_prefix('_') {
                // q_ij with single digits, or q_i_j
                if let Some((a, b)) = pair.split_once('_') {
                    let (a, b) = (parse_idx(a)?, parse_idx(b)?);
                    return (a != b && a < 64 && b < 64).then(|| Var::q_pair(a, b));
                }
                if pair.len() == 2 {
                    let (a, b) = (parse_idx(&pair[..1])?, parse_idx(&pair[1..])?);
                    return (a != b).then(|| Var::q_pair(a, b));
                }
                return Some(Var::q(parse_idx(pair)?));
            }
            if let Some((a, b)) = rest.split_once('_') {
                let (a, b) = (parse_idx(a)?, parse_idx(b)?);
                return (a != b && a < 64 && b < 64).then(|| Var::q_pair(a, b));
            }
            return Some(Var::q(parse_idx(rest)?));
        }
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        Some(Var::indexed(family, parse_idx(rest)?))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family() {
            Family::X => write!(f, "x{}", self.index()),
            Family::Y => write!(f, "y{}", self.index()),
            Family::Z => write!(f, "z{}", self.index()),
            Family::Alpha => write!(f, "a{}", self.index()),
            Family::Q => write!(f, "q{}", self.index()),
            Family::QPair => {
                let (a, b) = self.pair();
                write!(f, "q{a}_{b}")
            }
            Family::T => write!(f, "t"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial: variables in increasing order with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::power(v, 1)
    }

    pub fn power(v: Var, e: u32) -> Monomial {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut v: SmallVec<[(Var, u32); 4]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Weighted degree (`t` and `q` count twice).
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight() * e).sum()
    }

    /// Degree counting only variables of `family`.
    pub fn family_degree(&self, family: Family) -> u32 {
        self.0.iter().filter(|(v, _)| v.family() == family).map(|p| p.1).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_pairs(
            other.iter().map(|(v, e)| (v, e - self.exponent(v))),
        ))
    }

    /// Removes `v` entirely, returning its exponent.
    pub fn take(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect());
        (e, rest)
    }

    /// Splits into the part made of variables accepted by `pred` and the rest.
    pub fn split<F: Fn(Var) -> bool>(&self, pred: F) -> (Monomial, Monomial) {
        let (a, b): (SmallVec<_>, SmallVec<_>) = self.0.iter().copied().partition(|p| pred(p.0));
        (Monomial(a), Monomial(b))
    }

    /// Applies a variable renaming that may merge variables.
    pub fn rename<F: Fn(Var) -> Var>(&self, f: F) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Lexicographic order with the smallest variable most significant.
    /// Multiplicative, so usable for division.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(p), Some(r)) => match p.0.cmp(&r.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match p.1.cmp(&r.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }

    /// Graded lexicographic order used for printing.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["x1", "y9", "z3", "t", "q2", "q1_3", "a4"] {
            assert_eq!(Var::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Var::parse("q_13"), Some(Var::q_pair(1, 3)));
        assert_eq!(Var::parse("x_2"), Some(Var::x(2)));
        assert_eq!(Var::q_pair(3, 1), Var::q_pair(1, 3));
        assert_eq!(Var::parse("w1"), None);
        assert_eq!(Var::parse("x0"), None);
    }

    #[test]
    fn weights_follow_grading() {
        let m = Monomial::from_pairs([(Var::t(), 1), (Var::x(1), 2), (Var::q_pair(1, 2), 1)]);
        assert_eq!(m.degree(), 2 + 2 + 2);
        assert!(Var::x(1) < Var::y(1) && Var::z(9) < Var::q(1) && Var::q_pair(1, 2) < Var::t());
    }
}
