//! Noncommutative expressions in the extended quadratic algebra on brackets
//! `[i,j]` and letters `x_k`, with central `t` and (optionally) central `q_ij`.
//!
//! Elements are kept in a normal form: every `x` letter is pushed to a
//! commutative left prefix, squares `[i,j]^2` are replaced by `0` or `q_ij`,
//! and commuting (disjoint) brackets are sorted into the lexicographically
//! least arrangement. The 3-term relation is not oriented; equality modulo it
//! is decided degree by degree in [`IdealOracle`] by exact linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::bruhat_rep::{apply_bracket, apply_xi, GroupRingVec, RepMode};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::pieri::{arrangements, capacity_signed, multisets, subsets};
use crate::polyring::{elementary, q_param, quantum_elementary, vars, Family, Int, Monomial, Poly, QMode, Var};

/// Largest rank accepted by the ideal oracle.
pub const MAX_IDEAL_RANK: usize = 5;
/// Default degree bound of the ideal oracle.
pub const DEFAULT_DEGREE_BOUND: usize = 5;
/// Hard cap on the degree bound; rank 5 is further limited to degree 4.
pub const MAX_DEGREE_BOUND: usize = 6;

/// Which algebra an expression lives in: the classical one (`[i,j]^2 = 0`) or
/// the quantum one (`[i,j]^2 = q_ij`, general central `q_ij`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub n: usize,
    pub quantum: bool,
}

impl Algebra {
    pub fn classical(n: usize) -> Algebra {
        Algebra { n, quantum: false }
    }

    pub fn quantum(n: usize) -> Algebra {
        Algebra { n, quantum: true }
    }

    /// All brackets `[i,j]`, `i < j`, in increasing order.
    pub fn letters(&self) -> Vec<Bracket> {
        let n = self.n as u8;
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }
}

/// A bracket `[i,j]` with `i < j`.
pub type Bracket = (u8, u8);
/// A bracket word in normal form.
pub type Word = SmallVec<[Bracket; 8]>;

/// A raw letter. `Bracket(a, b)` accepts either order; `[b,a] = -[a,b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Bracket(usize, usize),
    X(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    x: Monomial,
    word: Word,
}

fn conflicts(a: Bracket, b: Bracket) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Reduces squares (modulo commutation of disjoint brackets) and sorts the
/// word into its least representative. `None` means the word is zero; else
/// the `q` factor picked up along the way is returned with the word.
fn normal_word(mut w: Vec<Bracket>, quantum: bool) -> Option<(Word, Monomial)> {
    let mut q = Monomial::one();
    'scan: loop {
        for p in 0..w.len() {
            for r in p + 1..w.len() {
                if w[r] == w[p] {
                    if !quantum {
                        return None;
                    }
                    let (i, j) = w[p];
                    q = q.mul(&Monomial::var(Var::q_pair(i as usize, j as usize)));
                    w.remove(r);
                    w.remove(p);
                    continue 'scan;
                }
                if conflicts(w[r], w[p]) {
                    break;
                }
            }
        }
        break;
    }
    let mut out = Word::new();
    while !w.is_empty() {
        let mut best: Option<usize> = None;
        for r in 0..w.len() {
            if (0..r).all(|p| !conflicts(w[p], w[r])) && best.is_none_or(|b| w[r] < w[b]) {
                best = Some(r);
            }
        }
        out.push(w.remove(best.expect("some letter is movable")));
    }
    Some((out, q))
}

/// An element of the algebra in normal form: `x`-monomial, bracket word and
/// a coefficient polynomial in the central variables.
#[derive(Clone, PartialEq, Eq)]
pub struct NCExpr {
    alg: Algebra,
    terms: BTreeMap<Key, Poly>,
}

impl NCExpr {
    pub fn zero(alg: Algebra) -> NCExpr {
        NCExpr { alg, terms: BTreeMap::new() }
    }

    pub fn one(alg: Algebra) -> NCExpr {
        NCExpr::scalar(alg, Poly::one())
    }

    pub fn scalar(alg: Algebra, c: Poly) -> NCExpr {
        let mut e = NCExpr::zero(alg);
        e.add_term(Key { x: Monomial::one(), word: Word::new() }, c);
        e
    }

    pub fn x(alg: Algebra, k: usize) -> Result<NCExpr> {
        NCExpr::one(alg).mul_letter(Letter::X(k))
    }

    pub fn bracket(alg: Algebra, a: usize, b: usize) -> Result<NCExpr> {
        NCExpr::one(alg).mul_letter(Letter::Bracket(a, b))
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `(x-monomial, bracket word, coefficient)` triples in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[Bracket], &Poly)> {
        self.terms.iter().map(|(k, c)| (&k.x, k.word.as_slice(), c))
    }

    fn add_term(&mut self, key: Key, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &NCExpr) {
        assert_eq!(self.alg, other.alg, "expressions from different algebras");
    }

    pub fn scale(&self, c: &Poly) -> NCExpr {
        let mut out = NCExpr::zero(self.alg);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Right multiplication by one letter, re-normalized.
    pub fn mul_letter(&self, l: Letter) -> Result<NCExpr> {
        let mut out = NCExpr::zero(self.alg);
        match l {
            Letter::Bracket(a, b) => {
                self.alg.check_index(a)?;
                self.alg.check_index(b)?;
                if a == b {
                    return Err(Error::InvalidParameters(format!("bracket [{a},{b}] needs distinct indices")));
                }
                let sign = if a < b { Int::one() } else { -Int::one() };
                let br = (a.min(b) as u8, a.max(b) as u8);
                for (k, c) in &self.terms {
                    let mut w = k.word.to_vec();
                    w.push(br);
                    if let Some((word, q)) = normal_word(w, self.alg.quantum) {
                        out.add_term(Key { x: k.x.clone(), word }, c.mul_monomial(&q, &sign));
                    }
                }
            }
            Letter::X(k0) => {
                self.alg.check_index(k0)?;
                let t = Monomial::var(Var::t());
                for (k, c) in &self.terms {
                    let mut idx = k0 as u8;
                    for p in (0..k.word.len()).rev() {
                        let (i, j) = k.word[p];
                        let sign = if idx == i {
                            idx = j;
                            Int::one()
                        } else if idx == j {
                            idx = i;
                            -Int::one()
                        } else {
                            continue;
                        };
                        let mut w = k.word.to_vec();
                        w.remove(p);
                        if let Some((word, q)) = normal_word(w, self.alg.quantum) {
                            out.add_term(Key { x: k.x.clone(), word }, c.mul_monomial(&q.mul(&t), &sign));
                        }
                    }
                    let x = k.x.mul(&Monomial::var(Var::x(idx as usize)));
                    out.add_term(Key { x, word: k.word.clone() }, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by a bracket whose indices are already validated.
    fn mul_bracket_unchecked(&self, br: Bracket) -> NCExpr {
        self.mul_letter(Letter::Bracket(br.0 as usize, br.1 as usize))
            .expect("validated bracket")
    }

    pub fn pow(&self, e: u32) -> NCExpr {
        let mut out = NCExpr::one(self.alg);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Weighted degree of a term: `x` and brackets count 1, `t` and `q` count 2.
    fn term_degree(k: &Key, m: &Monomial) -> usize {
        (k.x.degree() + m.degree()) as usize + k.word.len()
    }

    /// Distinct degrees occurring, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(k, c)| c.terms().map(move |(m, _)| NCExpr::term_degree(k, m)))
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_part(&self, d: usize) -> NCExpr {
        self.filter_monomials(|k, m| NCExpr::term_degree(k, m) == d)
    }

    /// The part whose coefficient monomials carry exactly `t^b`.
    pub fn t_part(&self, b: u32) -> NCExpr {
        self.filter_monomials(|_, m| m.exponent(Var::t()) == b)
    }

    fn filter_monomials<F: Fn(&Key, &Monomial) -> bool>(&self, keep: F) -> NCExpr {
        let mut out = NCExpr::zero(self.alg);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.filter(|m| keep(k, m)));
        }
        out
    }

    /// Coefficient of the empty word with no `x` letters.
    pub fn scalar_part(&self) -> Poly {
        self.terms
            .get(&Key { x: Monomial::one(), word: Word::new() })
            .cloned()
            .unwrap_or_else(Poly::zero)
    }

    /// Image in the Bruhat representation: brackets act right to left as the
    /// extended Bruhat operators, then `x_k` as `xi_k`, and `q_ij` is
    /// specialized to `q_i` for `j = i + 1` and to `0` otherwise.
    pub fn apply(&self, v: &GroupRingVec) -> GroupRingVec {
        let mode = RepMode { quantum: self.alg.quantum, t_zero: false };
        let special: HashMap<Var, Poly> = self
            .alg
            .letters()
            .into_iter()
            .map(|(i, j)| {
                let (i, j) = (i as usize, j as usize);
                (Var::q_pair(i, j), q_param(i, j, QMode::Specialized))
            })
            .collect();
        let mut out = GroupRingVec::zero(v.n());
        for (k, c) in &self.terms {
            let mut cur = v.clone();
            for &(i, j) in k.word.iter().rev() {
                cur = apply_bracket(i as usize, j as usize, &cur, mode);
            }
            for (var, e) in k.x.iter() {
                for _ in 0..e {
                    cur = apply_xi(var.index(), &cur);
                }
            }
            out += &cur.scale(&c.substitute(&special));
        }
        out
    }

    fn fmt_word(k: &Key) -> Vec<String> {
        let mut parts = Vec::new();
        if !k.x.is_one() {
            parts.push(k.x.to_string());
        }
        parts.extend(k.word.iter().map(|(i, j)| format!("[{i},{j}]")));
        parts
    }
}

impl fmt::Display for NCExpr {
    /// Terms by decreasing degree; coefficients with several terms are
    /// parenthesized. The output re-parses with [`parse_expr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(&Key, &Poly)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da = a.0.x.degree() as usize + a.0.word.len();
            let db = b.0.x.degree() as usize + b.0.word.len();
            db.cmp(&da).then(a.0.cmp(b.0))
        });
        for (n, (k, c)) in items.into_iter().enumerate() {
            let mut neg = false;
            let mut coeff = c.clone();
            if coeff.len() == 1 && coeff.terms().next().is_some_and(|(_, v)| v.is_negative()) {
                neg = true;
                coeff = -coeff;
            }
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !coeff.is_one() {
                if coeff.len() == 1 {
                    parts.push(coeff.to_string());
                } else {
                    parts.push(format!("({coeff})"));
                }
            }
            parts.extend(NCExpr::fmt_word(k));
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &NCExpr {
    type Output = NCExpr;
    fn add(self, rhs: &NCExpr) -> NCExpr {
        self.check_same(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &NCExpr {
    type Output = NCExpr;
    fn sub(self, rhs: &NCExpr) -> NCExpr {
        self.check_same(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &NCExpr {
    type Output = NCExpr;
    fn neg(self) -> NCExpr {
        self.scale(&Poly::int(-1))
    }
}

impl std::ops::AddAssign<&NCExpr> for NCExpr {
    fn add_assign(&mut self, rhs: &NCExpr) {
        self.check_same(rhs);
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&NCExpr> for NCExpr {
    fn sub_assign(&mut self, rhs: &NCExpr) {
        self.check_same(rhs);
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl std::ops::Mul for &NCExpr {
    type Output = NCExpr;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &NCExpr) -> NCExpr {
        self.check_same(rhs);
        let mut out = NCExpr::zero(self.alg);
        for (k, c) in &rhs.terms {
            let mut cur = self.clone();
            for (v, e) in k.x.iter() {
                for _ in 0..e {
                    cur = cur.mul_letter(Letter::X(v.index())).expect("validated index");
                }
            }
            for &br in &k.word {
                cur = cur.mul_bracket_unchecked(br);
            }
            out += &cur.scale(c);
        }
        out
    }
}

/// Normal form of a formal sum of words with central coefficients.
pub fn straighten(alg: Algebra, raw: &[(Poly, Vec<Letter>)]) -> Result<NCExpr> {
    let mut out = NCExpr::zero(alg);
    for (c, word) in raw {
        let mut cur = NCExpr::scalar(alg, c.clone());
        for &l in word {
            cur = cur.mul_letter(l)?;
        }
        out += &cur;
    }
    Ok(out)
}

/// `theta_i = x_i + sum_{j != i} [i,j]`.
pub fn dunkl_element(alg: Algebra, i: usize) -> Result<NCExpr> {
    let mut out = NCExpr::x(alg, i)?;
    for j in (1..=alg.n).filter(|&j| j != i) {
        out += &NCExpr::bracket(alg, i, j)?;
    }
    Ok(out)
}

/// Normal form of `theta_{i_1} ... theta_{i_l}`.
pub fn dunkl_product(alg: Algebra, indices: &[usize]) -> Result<NCExpr> {
    let mut out = NCExpr::one(alg);
    for &i in indices {
        out = &out * &dunkl_element(alg, i)?;
    }
    Ok(out)
}

/// Substitutes `z_i -> theta_i` into a polynomial in `z` and central
/// variables (`t`, `q_ij`). Monomials are multiplied in increasing index order.
pub fn evaluate_at_dunkl_nc(alg: Algebra, f: &Poly) -> Result<NCExpr> {
    let mut out = NCExpr::zero(alg);
    let mut thetas: HashMap<usize, NCExpr> = HashMap::new();
    for (m, c) in f.terms() {
        let mut cur = NCExpr::one(alg);
        let mut central = Monomial::one();
        for (v, e) in m.iter() {
            match v.family() {
                Family::Z => {
                    let th = match thetas.get(&v.index()) {
                        Some(th) => th.clone(),
                        None => {
                            let th = dunkl_element(alg, v.index())?;
                            thetas.insert(v.index(), th.clone());
                            th
                        }
                    };
                    for _ in 0..e {
                        cur = &cur * &th;
                    }
                }
                Family::T => central = central.mul(&Monomial::power(v, e)),
                Family::QPair if alg.quantum => central = central.mul(&Monomial::power(v, e)),
                _ => return Err(Error::UnexpectedVariable(v.to_string())),
            }
        }
        out += &cur.scale(&Poly::monomial(central, c.clone()));
    }
    Ok(out)
}

/// `E_k(A)`: the Pieri right-hand side for the index set `A`,
/// `sum_r (-t)^r N(|A| - k, 2r) sum X_S [i_1,j_1] ... [i_l,j_l]` with the
/// `i_a` distinct in `A \ S` and `j_1 <= ... <= j_l` outside `A`.
pub fn pieri_rhs_expr_set(alg: Algebra, a: &[usize], k: i64) -> Result<NCExpr> {
    let mut out = NCExpr::zero(alg);
    if k < 0 {
        return Ok(out);
    }
    let k = k as usize;
    let comp: Vec<usize> = (1..=alg.n).filter(|x| !a.contains(x)).collect();
    for r in 0..=k / 2 {
        let weight = capacity_signed(a.len() as i64 - k as i64, r as u64);
        if weight.is_zero() {
            continue;
        }
        let sign = if r % 2 == 1 { -Int::one() } else { Int::one() };
        let scalar = Poly::monomial(Monomial::power(Var::t(), r as u32), &sign * &weight);
        let rest = k - 2 * r;
        for s in subsets(a) {
            if s.len() > rest {
                continue;
            }
            let l = rest - s.len();
            let free: Vec<usize> = a.iter().copied().filter(|x| !s.contains(x)).collect();
            let mut xs = NCExpr::scalar(alg, scalar.clone());
            for &si in &s {
                xs = xs.mul_letter(Letter::X(si))?;
            }
            for is in arrangements(&free, l) {
                for js in multisets(&comp, l) {
                    let mut cur = xs.clone();
                    for (&i, &j) in is.iter().zip(&js) {
                        cur = cur.mul_letter(Letter::Bracket(i, j))?;
                    }
                    out += &cur;
                }
            }
        }
    }
    Ok(out)
}

/// The Pieri right-hand side for `e_k(theta_1..theta_m)`.
pub fn pieri_rhs_expr(alg: Algebra, m: usize, k: usize) -> Result<NCExpr> {
    if k > m || m > alg.n {
        return Err(Error::InvalidParameters(format!("need k <= m <= n, got k={k}, m={m}, n={}", alg.n)));
    }
    let a: Vec<usize> = (1..=m).collect();
    pieri_rhs_expr_set(alg, &a, k as i64)
}

/// `e_k(theta_1..theta_m)`, or its quantum version with general `q_ij`.
pub fn elementary_in_dunkl(alg: Algebra, m: usize, k: usize) -> Result<NCExpr> {
    let z = vars(Family::Z, 1..=m);
    let f: Poly = if alg.quantum {
        quantum_elementary(k as i64, &z, QMode::General)
    } else {
        elementary(k as i64, &z)
    };
    evaluate_at_dunkl_nc(alg, &f)
}

/// `[i,j][j,k] + [j,k][k,i] + [k,i][i,j]`.
pub fn three_term(alg: Algebra, i: usize, j: usize, k: usize) -> Result<NCExpr> {
    let raw = vec![
        (Poly::one(), vec![Letter::Bracket(i, j), Letter::Bracket(j, k)]),
        (Poly::one(), vec![Letter::Bracket(j, k), Letter::Bracket(k, i)]),
        (Poly::one(), vec![Letter::Bracket(k, i), Letter::Bracket(i, j)]),
    ];
    straighten(alg, &raw)
}

/// Left side minus right side of the cyclic relation
/// `sum_k [a,i_k] ... [a,i_m] [a,i_1] ... [a,i_k]
///   = sum_k q_{a i_k} [i_k,i_{k+1}] ... [i_k,i_m] [i_k,i_1] ... [i_k,i_{k-1}]`.
pub fn cyclic_relation(alg: Algebra, a: usize, is: &[usize]) -> Result<NCExpr> {
    let mut all = is.to_vec();
    all.push(a);
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() || is.is_empty() {
        return Err(Error::InvalidParameters("cyclic relation needs distinct indices".into()));
    }
    let m = is.len();
    let mut raw = Vec::new();
    for k in 0..m {
        let mut lhs: Vec<Letter> = (k..m).map(|p| Letter::Bracket(a, is[p])).collect();
        lhs.extend((0..=k).map(|p| Letter::Bracket(a, is[p])));
        raw.push((Poly::one(), lhs));
        let rhs: Vec<Letter> =
            (k + 1..m).chain(0..k).map(|p| Letter::Bracket(is[k], is[p])).collect();
        raw.push((-q_param::<Int>(a, is[k], QMode::General), rhs));
    }
    straighten(alg, &raw)
}

#[derive(Default)]
struct Span {
    cols: HashMap<(Monomial, Word), u32>,
    ech: SparseEchelon,
}

impl Span {
    fn col(&mut self, key: (Monomial, Word)) -> u32 {
        let next = self.cols.len() as u32;
        *self.cols.entry(key).or_insert(next)
    }
}

/// A spanning-set column: q-monomial and bracket word.
type Column = (Monomial, Word);

/// Decides membership in the two-sided ideal generated by the 3-term
/// relations, one graded component at a time.
///
/// Because `x` letters pass through a 3-term relation up to a relabeling
/// (`g x_i = x_j g`), the ideal is spanned by `x^a t^b c (u g v)` with `u`, `v`
/// bracket words and `c` a `q`-monomial. So an element belongs to it iff, for
/// every `x`-monomial and `t`-power, the remaining bracket part lies in the
/// rational span of the normal forms `c * NF(u g v)` of matching degree.
pub struct IdealOracle {
    alg: Algebra,
    max_degree: usize,
    spans: HashMap<usize, Span>,
}

impl IdealOracle {
    pub fn new(alg: Algebra, max_degree: usize) -> Result<IdealOracle> {
        if alg.n < 2 || alg.n > MAX_IDEAL_RANK {
            return Err(Error::RankOutOfRange { n: alg.n, min: 2, max: MAX_IDEAL_RANK });
        }
        let cap = if alg.n == MAX_IDEAL_RANK { 4 } else { MAX_DEGREE_BOUND };
        if max_degree > cap {
            return Err(Error::DegreeBound(format!("degree bound {max_degree} exceeds {cap} at n = {}", alg.n)));
        }
        Ok(IdealOracle { alg, max_degree, spans: HashMap::new() })
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    fn relations(&self) -> Vec<NCExpr> {
        let n = self.alg.n;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in i + 1..=n {
                    if k != j {
                        out.push(three_term(self.alg, i, j, k).expect("indices in range"));
                    }
                }
            }
        }
        out
    }

    fn q_monomials(&self, e: usize) -> Vec<Monomial> {
        let pairs: Vec<Var> =
            self.alg.letters().into_iter().map(|(i, j)| Var::q_pair(i as usize, j as usize)).collect();
        let mut out = vec![Monomial::one()];
        for _ in 0..e {
            let mut next = Vec::new();
            for m in &out {
                for &v in &pairs {
                    let last = m.iter().last().map(|p| p.0);
                    if last.is_none_or(|l| l <= v) {
                        next.push(m.mul(&Monomial::var(v)));
                    }
                }
            }
            out = next;
        }
        out
    }

    fn words(&self, len: usize) -> Vec<Vec<Bracket>> {
        let letters = self.alg.letters();
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    letters.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn span(&mut self, d: usize) -> &mut Span {
        if !self.spans.contains_key(&d) {
            let mut span = Span::default();
            let rels = self.relations();
            let max_e = if self.alg.quantum && d >= 2 { (d - 2) / 2 } else { 0 };
            for e in 0..=max_e {
                let l = d - 2 - 2 * e;
                let qs = self.q_monomials(e);
                for a in 0..=l {
                    let us = self.words(a);
                    let vs = self.words(l - a);
                    for u in &us {
                        let left = straighten(self.alg, &[(Poly::one(), to_letters(u))]).expect("valid");
                        if left.is_zero() {
                            continue;
                        }
                        for g in &rels {
                            let lg = &left * g;
                            if lg.is_zero() {
                                continue;
                            }
                            for v in &vs {
                                let mut ugv = lg.clone();
                                for &br in v {
                                    ugv = ugv.mul_bracket_unchecked(br);
                                }
                                for q in &qs {
                                    let mut row: SparseRow = Vec::new();
                                    for (k, c) in &ugv.terms {
                                        for (m, val) in c.terms() {
                                            let col = span.col((m.mul(q), k.word.clone()));
                                            row.push((col, val.clone()));
                                        }
                                    }
                                    row.sort_by_key(|p| p.0);
                                    span.ech.insert(row);
                                }
                            }
                        }
                    }
                }
            }
            self.spans.insert(d, span);
        }
        self.spans.get_mut(&d).expect("just built")
    }

    /// Whether `e` lies in the ideal. Errors if a component exceeds the
    /// degree bound.
    pub fn contains(&mut self, e: &NCExpr) -> Result<bool> {
        if e.alg != self.alg {
            return Err(Error::InvalidParameters("expression and oracle use different algebras".into()));
        }
        // (x-monomial, t-power, bracket degree) -> entries keyed by (q-monomial, word)
        let mut comps: BTreeMap<(Monomial, u32, usize), Vec<(Column, Int)>> = BTreeMap::new();
        for (k, c) in &e.terms {
            for (m, v) in c.terms() {
                let (tp, qpart) = m.take(Var::t());
                let d = qpart.degree() as usize + k.word.len();
                comps.entry((k.x.clone(), tp, d)).or_default().push(((qpart, k.word.clone()), v.clone()));
            }
        }
        for ((x, tp, d), entries) in comps {
            let total = d + x.degree() as usize + 2 * tp as usize;
            if total > self.max_degree {
                return Err(Error::DegreeBound(format!(
                    "component of degree {total} exceeds the bound {}",
                    self.max_degree
                )));
            }
            if d < 2 {
                return Ok(false);
            }
            let span = self.span(d);
            let mut row: SparseRow = Vec::with_capacity(entries.len());
            for (key, v) in entries {
                match span.cols.get(&key) {
                    Some(&c) => row.push((c, v)),
                    None => return Ok(false),
                }
            }
            row.sort_by_key(|p| p.0);
            if !span.ech.contains(row) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn to_letters(w: &[Bracket]) -> Vec<Letter> {
    w.iter().map(|&(i, j)| Letter::Bracket(i as usize, j as usize)).collect()
}

/// One-shot membership test with a fresh oracle.
pub fn ideal_membership(e: &NCExpr, max_degree: usize) -> Result<bool> {
    IdealOracle::new(e.algebra(), max_degree)?.contains(e)
}

/// Whether the cyclic relation for `(a; i_1..i_m)` holds in the quantum algebra.
pub fn cyclic_relation_check(a: usize, is: &[usize], n: usize) -> Result<bool> {
    let alg = Algebra::quantum(n);
    let e = cyclic_relation(alg, a, is)?;
    ideal_membership(&e, is.len() + 1)
}

/// `(m, k)` pairs, `1 <= k <= m <= n`, for which
/// `e_k(theta_1..theta_m) - E_k({1..m})` is not in the ideal. Degrees above
/// the oracle's bound are an error, not skipped.
pub fn pieri_ideal_failures(oracle: &mut IdealOracle) -> Result<Vec<(usize, usize)>> {
    let alg = oracle.algebra();
    let mut bad = Vec::new();
    for m in 1..=alg.n {
        for k in 1..=m {
            let lhs = elementary_in_dunkl(alg, m, k)?;
            let rhs = pieri_rhs_expr(alg, m, k)?;
            if !oracle.contains(&(&lhs - &rhs))? {
                bad.push((m, k));
            }
        }
    }
    Ok(bad)
}

/// `(m, k)` pairs for which the recursion
/// `E_k(A + j) = E_k(A) + E_{k-1}(A) theta_j (+ sum_nu q_{nu j} E_{k-2}(A - nu))`
/// with `A = {1..m}`, `j = m + 1` fails modulo the ideal.
pub fn pieri_recursion_ideal_failures(oracle: &mut IdealOracle) -> Result<Vec<(usize, usize)>> {
    let alg = oracle.algebra();
    let mut bad = Vec::new();
    for m in 0..alg.n {
        let a: Vec<usize> = (1..=m).collect();
        let j = m + 1;
        let mut aj = a.clone();
        aj.push(j);
        let theta = dunkl_element(alg, j)?;
        for k in 1..=m + 1 {
            let k = k as i64;
            let mut diff = pieri_rhs_expr_set(alg, &aj, k)?;
            diff -= &pieri_rhs_expr_set(alg, &a, k)?;
            diff -= &(&pieri_rhs_expr_set(alg, &a, k - 1)? * &theta);
            if alg.quantum {
                for &nu in &a {
                    let smaller: Vec<usize> = a.iter().copied().filter(|&x| x != nu).collect();
                    let q = q_param::<Int>(nu, j, QMode::General);
                    diff -= &pieri_rhs_expr_set(alg, &smaller, k - 2)?.scale(&q);
                }
            }
            if !oracle.contains(&diff)? {
                bad.push((m, k as usize));
            }
        }
    }
    Ok(bad)
}

/// Parses the infix grammar `[i,j]`, `x_k` (or `xk`), `t`, `q_ij` (or `q_i_j`,
/// `qi_j`; a lone `q_i` means `q_{i,i+1}`), integers, `+`, `-`, `*`, `^`,
/// parentheses and juxtaposition, into a normal form.
pub fn parse_expr(alg: Algebra, s: &str) -> Result<NCExpr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, alg };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    alg: Algebra,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn number(&mut self) -> Result<usize> {
        let d = self.digits()?.to_string();
        d.parse().map_err(|_| self.err(&format!("bad number {d}")))
    }

    fn expr(&mut self) -> Result<NCExpr> {
        let mut acc = if self.eat(b'-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCExpr> {
        let mut acc = self.power()?;
        loop {
            // Juxtaposition multiplies, as does an explicit `*`.
            let juxtaposed = matches!(self.peek(), Some(c) if c.is_ascii_digit() || b"[(xtq".contains(&c));
            if self.eat(b'*') || juxtaposed {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<NCExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.number()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let i = self.number()?;
        if i == 0 || i > self.alg.n {
            return Err(Error::Parse { offset: at, message: format!("index {i} outside 1..={}", self.alg.n) });
        }
        Ok(i)
    }

    fn atom(&mut self) -> Result<NCExpr> {
        let alg = self.alg;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let i = self.index()?;
                self.expect(b',')?;
                let j = self.index()?;
                self.expect(b']')?;
                if i == j {
                    return Err(self.err("bracket needs distinct indices"));
                }
                NCExpr::bracket(alg, i, j)
            }
            Some(b'x') => {
                self.pos += 1;
                self.eat(b'_');
                let k = self.index()?;
                NCExpr::x(alg, k)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(NCExpr::scalar(alg, Poly::var(Var::t())))
            }
            Some(b'q') => {
                self.pos += 1;
                if !alg.quantum {
                    return Err(self.err("q appears in a classical expression"));
                }
                self.eat(b'_');
                let at = self.pos;
                let first = self.digits()?.to_string();
                let (i, j) = if self.eat(b'_') || self.eat(b',') {
                    (first.parse::<usize>().unwrap_or(0), self.number()?)
                } else if first.len() == 2 {
                    let b = first.as_bytes();
                    ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
                } else {
                    let i = first.parse::<usize>().unwrap_or(0);
                    (i, i + 1)
                };
                if i == 0 || j == 0 || i > alg.n || j > alg.n || i == j {
                    return Err(Error::Parse { offset: at, message: format!("bad quantum parameter q_{i}_{j}") });
                }
                Ok(NCExpr::scalar(alg, Poly::var(Var::q_pair(i, j))))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?.to_string();
                let v: num_bigint::BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(NCExpr::scalar(alg, Poly::constant(Int::from(v))))
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::Permutation;
    use proptest::prelude::*;

    fn cl(n: usize) -> Algebra {
        Algebra::classical(n)
    }

    fn parse(alg: Algebra, s: &str) -> NCExpr {
        parse_expr(alg, s).unwrap()
    }

    #[test]
    fn straightening_examples() {
        let a = cl(3);
        assert_eq!(parse(a, "[1,2]*x1"), parse(a, "x2*[1,2] + t"));
        assert_eq!(parse(a, "[1,2]*x2"), parse(a, "x1*[1,2] - t"));
        assert_eq!(parse(a, "[1,2]*x3").to_string(), "x3*[1,2]");
        assert!(parse(a, "[1,2]*[1,2]").is_zero());
        let q = Algebra::quantum(3);
        assert_eq!(parse(q, "[1,2]*[1,2]").to_string(), "q1_2");
        assert_eq!(parse(a, "[2,1]"), -&parse(a, "[1,2]"));
    }

    #[test]
    fn commuting_brackets_sort_and_squares_cancel_through_them() {
        let a = cl(4);
        assert_eq!(parse(a, "[3,4][1,2]").to_string(), "[1,2]*[3,4]");
        assert!(parse(a, "[1,2][3,4][1,2]").is_zero());
        let q = Algebra::quantum(4);
        assert_eq!(parse(q, "[1,2][3,4][1,2]").to_string(), "q1_2*[3,4]");
        // A conflicting letter in between blocks the square.
        assert_eq!(parse(a, "[1,2][2,3][1,2]").len(), 1);
    }

    #[test]
    fn dunkl_products() {
        let a = cl(2);
        assert_eq!(dunkl_product(a, &[1, 2]).unwrap().to_string(), "x1*x2 - t");
        let q = Algebra::quantum(2);
        assert_eq!(dunkl_product(q, &[1, 2]).unwrap(), parse(q, "x1*x2 - t - q_12"));
    }

    #[test]
    fn rhs_examples() {
        let a = cl(2);
        assert_eq!(pieri_rhs_expr(a, 2, 1).unwrap(), parse(a, "x1 + x2"));
        assert_eq!(pieri_rhs_expr(a, 1, 1).unwrap(), parse(a, "x1 + [1,2]"));
        assert_eq!(pieri_rhs_expr(a, 2, 2).unwrap(), parse(a, "x1*x2 - t"));
    }

    #[test]
    fn relation_members() {
        let a = cl(3);
        let g = parse(a, "[1,2][2,3] + [2,3][3,1] + [3,1][1,2]");
        assert!(ideal_membership(&g, 5).unwrap());
        assert!(!ideal_membership(&parse(a, "[1,2][2,3]"), 5).unwrap());
        let e = &dunkl_product(cl(2), &[1, 2]).unwrap() - &parse(cl(2), "x1*x2 - t");
        assert!(e.is_zero() && ideal_membership(&e, 5).unwrap());
        // Dunkl elements commute modulo the ideal.
        for alg in [cl(3), Algebra::quantum(3)] {
            let c = &dunkl_product(alg, &[1, 2]).unwrap() - &dunkl_product(alg, &[2, 1]).unwrap();
            assert!(!c.is_zero());
            assert!(ideal_membership(&c, 5).unwrap());
        }
    }

    #[test]
    fn degree_bound_reported() {
        let a = cl(3);
        let e = parse(a, "x1^3*[1,2][2,3] + x1^3*[2,3][3,1] + x1^3*[3,1][1,2]");
        assert!(matches!(ideal_membership(&e, 4), Err(Error::DegreeBound(_))));
        assert!(ideal_membership(&e, 5).unwrap());
    }

    #[test]
    fn pieri_in_the_algebra() {
        let mut o = IdealOracle::new(cl(3), 3).unwrap();
        assert!(pieri_ideal_failures(&mut o).unwrap().is_empty());
        let mut o = IdealOracle::new(Algebra::quantum(3), 3).unwrap();
        assert!(pieri_ideal_failures(&mut o).unwrap().is_empty());
    }

    #[test]
    fn recursion_in_the_algebra() {
        for alg in [cl(3), Algebra::quantum(3)] {
            let mut o = IdealOracle::new(alg, 4).unwrap();
            assert!(pieri_recursion_ideal_failures(&mut o).unwrap().is_empty());
        }
    }

    #[test]
    fn cyclic_relations() {
        assert!(cyclic_relation_check(1, &[2], 2).unwrap());
        assert!(cyclic_relation_check(1, &[2, 3], 3).unwrap());
        assert!(cyclic_relation_check(2, &[3, 1], 3).unwrap());
        assert!(cyclic_relation_check(1, &[2, 3, 4], 4).unwrap());
        assert!(cyclic_relation_check(3, &[1, 4, 2], 4).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let q = Algebra::quantum(3);
        let e = &dunkl_product(q, &[1, 2, 3]).unwrap() + &parse(q, "(2*t + q_13)*[1,3] - 5");
        assert_eq!(parse(q, &e.to_string()), e);
    }

    #[test]
    fn parse_errors() {
        let a = cl(3);
        assert!(matches!(parse_expr(a, "[1,4]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr(a, "[1,1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr(a, "x1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr(a, "q_12"), Err(Error::Parse { .. })));
    }

    fn sound_on_basis(e: &NCExpr) -> bool {
        Permutation::all(e.algebra().n).into_iter().all(|w| e.apply(&GroupRingVec::basis(&w)).is_zero())
    }

    #[test]
    fn ideal_members_act_as_zero() {
        for alg in [cl(3), Algebra::quantum(3)] {
            let g = three_term(alg, 1, 2, 3).unwrap();
            let e = &(&parse(alg, "x1*[1,3] + t") * &g) * &parse(alg, "[2,3] - x2");
            assert!(ideal_membership(&e, 5).unwrap());
            assert!(sound_on_basis(&e));
        }
        let e = cyclic_relation(Algebra::quantum(4), 1, &[2, 3, 4]).unwrap();
        assert!(sound_on_basis(&e));
    }

    fn letter(n: usize) -> impl Strategy<Value = Letter> {
        prop_oneof![
            (1..=n, 1..=n).prop_filter("distinct", |(a, b)| a != b).prop_map(|(a, b)| Letter::Bracket(a, b)),
            (1..=n).prop_map(Letter::X),
        ]
    }

    /// One admissible rewrite at position `p`, as a formal sum of words.
    fn rewrite(w: &[Letter], p: usize) -> Option<Vec<(Poly, Vec<Letter>)>> {
        let (a, b) = (w.get(p)?, w.get(p + 1)?);
        let with = |mid: Vec<Letter>| {
            let mut v = w[..p].to_vec();
            v.extend(mid);
            v.extend_from_slice(&w[p + 2..]);
            v
        };
        match (*a, *b) {
            (Letter::Bracket(i, j), Letter::X(k)) => {
                if k != i && k != j {
                    Some(vec![(Poly::one(), with(vec![Letter::X(k), Letter::Bracket(i, j)]))])
                } else {
                    // [i,j] x_i = x_j [i,j] + t and [i,j] x_j = x_i [i,j] - t.
                    let (other, s) = if k == i { (j, 1) } else { (i, -1) };
                    Some(vec![
                        (Poly::one(), with(vec![Letter::X(other), Letter::Bracket(i, j)])),
                        (Poly::monomial(Monomial::var(Var::t()), Int::from(s)), with(vec![])),
                    ])
                }
            }
            (Letter::Bracket(i, j), Letter::Bracket(k, l)) if ![k, l].contains(&i) && ![k, l].contains(&j) => {
                Some(vec![(Poly::one(), with(vec![Letter::Bracket(k, l), Letter::Bracket(i, j)]))])
            }
            (Letter::X(i), Letter::X(j)) => Some(vec![(Poly::one(), with(vec![Letter::X(j), Letter::X(i)]))]),
            (Letter::Bracket(i, j), _) if i > j => {
                let mut v = w.to_vec();
                v[p] = Letter::Bracket(j, i);
                Some(vec![(Poly::int(-1), v)])
            }
            _ => None,
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn straightening_is_well_defined(
            w in prop::collection::vec(letter(4), 0..7),
            p in 0usize..6,
            quantum in any::<bool>(),
        ) {
            let alg = Algebra { n: 4, quantum };
            let direct = straighten(alg, &[(Poly::one(), w.clone())]).unwrap();
            if let Some(raw) = rewrite(&w, p) {
                prop_assert_eq!(straighten(alg, &raw).unwrap(), direct);
            }
        }

        #[test]
        fn straightening_preserves_the_representation(
            w in prop::collection::vec(letter(3), 0..6),
            quantum in any::<bool>(),
            pick in 0usize..6,
        ) {
            let alg = Algebra { n: 3, quantum };
            let mode = RepMode { quantum, t_zero: false };
            let e = straighten(alg, &[(Poly::one(), w.clone())]).unwrap();
            let start = Permutation::all(3).into_iter().nth(pick).unwrap();
            let mut v = GroupRingVec::basis(&start);
            for l in w.iter().rev() {
                v = match *l {
                    Letter::X(k) => apply_xi(k, &v),
                    Letter::Bracket(a, b) => apply_bracket(a, b, &v, mode),
                };
            }
            prop_assert_eq!(e.apply(&GroupRingVec::basis(&start)), v);
        }
    }
}
