//! The right-hand side of the (quantum) Pieri formula for Dunkl elements,
//! its recursion, the equivariant path rule and structure constants of the
//! special classes `S_[m,k]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::bruhat_rep::{apply_bracket, apply_dunkl, apply_xi, evaluate_at_dunkl, x_to_z, GroupRingVec, RepMode};
use crate::error::Result;
use crate::polyring::{
    complete, elementary, format_factored, q_param, to_alpha_coordinates, vars, Family, Int, Poly, QMode, Var,
};
use crate::schubert::special_double_schubert;
use crate::symgroup::Permutation;

/// `N(a, 2b) = (2b-1)!! C(a+2b, 2b)`, with `(-1)!! = 1`.
pub fn capacity(a: u64, b: u64) -> Int {
    let mut dfact = Int::one();
    let mut k = 1;
    while k < 2 * b {
        dfact = &dfact * &Int::from(k as i64);
        k += 2;
    }
    &dfact * &Int::binomial(a + 2 * b, 2 * b)
}

/// `N(m-k, 2r)` extended to `m < k`. There the binomial `C(m-k+2r, 2r)`
/// vanishes whenever a term exists at all, because `|I| + |S| <= m` forces
/// `0 <= m - k + 2r < 2r`.
pub(crate) fn capacity_signed(a: i64, b: u64) -> Int {
    if a >= 0 {
        capacity(a as u64, b)
    } else {
        Int::zero()
    }
}

/// One summand `X_S [i_1,j_1] ... [i_l,j_l]` of the Pieri right-hand side,
/// weighted by `(-t)^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieriTerm {
    pub r: usize,
    pub s: Vec<usize>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl PieriTerm {
    /// Degree with `deg x = deg [i,j] = 1`, `deg t = 2`.
    pub fn degree(&self) -> usize {
        self.s.len() + self.i.len() + 2 * self.r
    }
}

pub(crate) fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

/// Ordered sequences of `l` distinct elements of `items`.
pub(crate) fn arrangements(items: &[usize], l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in arrangements(&rest, l - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Weakly increasing sequences of length `l` from `items` (sorted).
pub(crate) fn multisets(items: &[usize], l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        for mut tail in multisets(&items[k..], l - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Every term for `e_k(θ_1..θ_m)` in `S_n`, ordered by `r`, then `S` (larger
/// first, then lexicographic), then `I`, then `J`.
pub fn enumerate_terms(n: usize, m: usize, k: usize) -> Vec<PieriTerm> {
    let inner: Vec<usize> = (1..=m).collect();
    let outer: Vec<usize> = (m + 1..=n).collect();
    let mut out = Vec::new();
    for r in 0..=k / 2 {
        let rest = k - 2 * r;
        for s in subsets(&inner) {
            if s.len() > rest {
                continue;
            }
            let l = rest - s.len();
            let free: Vec<usize> = inner.iter().copied().filter(|x| !s.contains(x)).collect();
            for i in arrangements(&free, l) {
                for j in multisets(&outer, l) {
                    out.push(PieriTerm { r, s: s.clone(), i: i.clone(), j });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.r.cmp(&b.r)
            .then(b.s.len().cmp(&a.s.len()))
            .then(a.s.cmp(&b.s))
            .then(a.i.cmp(&b.i))
            .then(a.j.cmp(&b.j))
    });
    out
}

/// `E_k(A)(v)`: the Pieri right-hand side for an arbitrary index set `A`,
/// applied as an operator. Brackets act right to left, then `X_S`.
pub fn rhs_apply_set(n: usize, a: &[usize], k: i64, v: &GroupRingVec, mode: RepMode) -> GroupRingVec {
    if k < 0 {
        return GroupRingVec::zero(n);
    }
    let k = k as usize;
    let m = a.len();
    let comp: Vec<usize> = (1..=n).filter(|x| !a.contains(x)).collect();
    let mut out = GroupRingVec::zero(n);
    for r in 0..=k / 2 {
        if r > 0 && mode.t_zero {
            break;
        }
        let weight = capacity_signed(m as i64 - k as i64, r as u64);
        if weight.is_zero() {
            continue;
        }
        let sign = if r % 2 == 1 { Int::from(-1) } else { Int::one() };
        let scalar = Poly::monomial(crate::polyring::Monomial::power(Var::t(), r as u32), &sign * &weight);
        let rest = k - 2 * r;
        let mut partial = GroupRingVec::zero(n);
        // Brackets first, by depth-first search from the rightmost factor.
        let mut stack: Vec<(GroupRingVec, Vec<usize>, usize)> = vec![(v.clone(), Vec::new(), usize::MAX)];
        while let Some((cur, used, jmax)) = stack.pop() {
            let l = used.len();
            if l <= rest {
                let free: Vec<usize> = a.iter().copied().filter(|x| !used.contains(x)).collect();
                for s in subsets(&free) {
                    if s.len() == rest - l {
                        let mut x = cur.clone();
                        for &si in &s {
                            x = apply_xi(si, &x);
                        }
                        partial += &x;
                    }
                }
            }
            if l == rest {
                continue;
            }
            for &j in comp.iter().filter(|&&j| j <= jmax) {
                for &i in a.iter().filter(|x| !used.contains(x)) {
                    let next = apply_bracket(i, j, &cur, mode);
                    if !next.is_zero() {
                        let mut u = used.clone();
                        u.push(i);
                        stack.push((next, u, j));
                    }
                }
            }
        }
        out += &partial.scale(&scalar);
    }
    out
}

/// The right-hand side for `e_k(θ_1..θ_m)` applied to `v`.
pub fn pieri_rhs_apply(n: usize, m: usize, k: usize, v: &GroupRingVec, mode: RepMode) -> GroupRingVec {
    let a: Vec<usize> = (1..=m).collect();
    rhs_apply_set(n, &a, k as i64, v, mode)
}

/// Checks `E_k(A ∪ {j}) = E_k(A) + E_{k-1}(A) θ_j (+ Σ_ν q_{νj} E_{k-2}(A \ {ν}))`
/// on every basis vector, for `A = {1..m}` and `j = m + 1`.
pub fn pieri_recursion_check(n: usize, mode: RepMode) -> bool {
    pieri_recursion_failures(n, mode).is_empty()
}

/// Failing `(m, k, w)` triples of the recursion check.
pub fn pieri_recursion_failures(n: usize, mode: RepMode) -> Vec<(usize, usize, Permutation)> {
    let mut bad = Vec::new();
    for w in Permutation::all(n) {
        let v = GroupRingVec::basis(&w);
        for m in 0..n {
            let a: Vec<usize> = (1..=m).collect();
            let j = m + 1;
            let mut aj = a.clone();
            aj.push(j);
            let theta_v = apply_dunkl(j, &v, mode);
            for k in 0..=(m + 1) {
                let k = k as i64;
                let lhs = rhs_apply_set(n, &aj, k, &v, mode);
                let mut rhs = rhs_apply_set(n, &a, k, &v, mode);
                rhs += &rhs_apply_set(n, &a, k - 1, &theta_v, mode);
                if mode.quantum {
                    for &nu in &a {
                        let q = q_param::<Int>(nu, j, QMode::Specialized);
                        if q.is_zero() {
                            continue;
                        }
                        let smaller: Vec<usize> = a.iter().copied().filter(|&x| x != nu).collect();
                        rhs += &rhs_apply_set(n, &smaller, k - 2, &v, mode).scale(&q);
                    }
                }
                if lhs != rhs {
                    bad.push((m, k as usize, w.clone()));
                }
            }
        }
    }
    bad
}

/// `e_k(θ_1..θ_m)(w)` at `t = 0` by the path rule: sum over `S` and chains
/// `w -> w t_{i_l j_l} -> ... -> w t_{i_l j_l} ... t_{i_1 j_1}` of Bruhat
/// covers with distinct `i_a <= m < j_a` and `j_1 <= ... <= j_l`, weighted
/// by `prod_{s in S} y_{w(s)}`.
pub fn equiv_pieri_expand(w: &Permutation, m: usize, k: usize) -> BTreeMap<Permutation, Poly> {
    let n = w.n();
    let mut out: BTreeMap<Permutation, Poly> = BTreeMap::new();
    // (endpoint, used i's, bound on the next j)
    let mut stack: Vec<(Permutation, Vec<usize>, usize)> = vec![(w.clone(), Vec::new(), n)];
    while let Some((u, used, jmax)) = stack.pop() {
        let l = used.len();
        let free: Vec<Var> = (1..=m).filter(|s| !used.contains(s)).map(|s| Var::y(w.at(s))).collect();
        let weight: Poly = elementary(k as i64 - l as i64, &free);
        if !weight.is_zero() {
            let e = out.entry(u.clone()).or_default();
            *e += &weight;
        }
        if l == k {
            continue;
        }
        for j in (m + 1..=jmax).rev() {
            for i in (1..=m).filter(|i| !used.contains(i)) {
                if u.is_bruhat_cover(i, j) {
                    let mut nu = used.clone();
                    nu.push(i);
                    stack.push((u.transpose(i, j), nu, j));
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Coefficient of `u` in `S_[m,k](θ, y)(w)` at `t = 0`, by the path rule.
pub fn struct_const_special(w: &Permutation, u: &Permutation, m: usize, k: usize) -> Result<Poly> {
    let n = w.n();
    special_double_schubert(m, k, n)?;
    let ys = vars(Family::Y, 1..=m - k + 1);
    let mut out = Poly::zero();
    for j in 0..=k {
        let h: Poly = complete(j as i64, &ys, true);
        if let Some(c) = equiv_pieri_expand(w, m, k - j).get(u) {
            out += &(&h * c);
        }
    }
    Ok(out)
}

/// The same coefficient by direct evaluation at Dunkl operators.
pub fn struct_const_special_by_operators(w: &Permutation, u: &Permutation, m: usize, k: usize) -> Result<Poly> {
    let f = x_to_z(&special_double_schubert(m, k, w.n())?);
    Ok(evaluate_at_dunkl(&f, &GroupRingVec::basis(w), RepMode::CLASSICAL_T0)?.get(u))
}

fn y_root_candidates(n: usize) -> Vec<Poly> {
    let mut c = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            c.push(Poly::difference(Var::y(a), Var::y(b)));
        }
    }
    c
}

fn alpha_root_candidates(n: usize) -> Vec<Poly> {
    let mut c = Vec::new();
    for a in 1..n {
        for b in a..n {
            c.push((a..=b).map(|k| Poly::var(Var::alpha(k))).sum());
        }
    }
    c
}

/// `p` with positive-root factors pulled out, e.g. `(y1-y4)*(y1-y6)`.
pub fn format_y_factored(p: &Poly, n: usize) -> String {
    let (f, rest) = p.extract_factors(&y_root_candidates(n));
    format_factored(&f, &rest)
}

/// `p` in simple roots `a_i = y_i - y_{i+1}`, factored where possible,
/// e.g. `(a1+a2+a3)*(a1+a2+a3+a4+a5)`.
pub fn format_alpha_factored(p: &Poly, n: usize) -> String {
    let a = to_alpha_coordinates(p, n);
    let (f, rest) = a.extract_factors(&alpha_root_candidates(n));
    format_factored(&f, &rest)
}

/// Whether `p`, rewritten in simple roots, is a polynomial in the `a_i` alone
/// with nonnegative coefficients.
pub fn is_alpha_positive(p: &Poly, n: usize) -> bool {
    let a = to_alpha_coordinates(p, n);
    let positive = a
        .terms()
        .all(|(m, c)| !c.is_negative() && m.iter().all(|(v, _)| v.family() == Family::Alpha));
    positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat_rep::DunklEvaluator;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, None).unwrap()
    }
    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn capacity_examples() {
        for a in 0..6 {
            assert_eq!(capacity(a, 0), Int::one());
        }
        assert_eq!(capacity(1, 1), Int::from(3));
        assert_eq!(capacity(0, 2), Int::from(3));
        assert_eq!(capacity(2, 2), Int::from(45));
    }

    #[test]
    fn enumeration_examples() {
        let terms = enumerate_terms(2, 1, 1);
        assert_eq!(
            terms,
            vec![
                PieriTerm { r: 0, s: vec![1], i: vec![], j: vec![] },
                PieriTerm { r: 0, s: vec![], i: vec![1], j: vec![2] },
            ]
        );
        assert_eq!(enumerate_terms(4, 3, 0), vec![PieriTerm { r: 0, s: vec![], i: vec![], j: vec![] }]);
        for t in enumerate_terms(5, 4, 4) {
            assert_eq!(t.degree(), 4);
            assert!(t.i.iter().all(|i| !t.s.contains(i)));
            assert!(t.j.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn enumeration_count_matches_closed_form() {
        // With one outer index every J is constant, so the count of terms of
        // size (r, |S|) is C(m, |S|) * (m - |S|)! / (m - |S| - l)!.
        let (n, m, k) = (5usize, 4usize, 4usize);
        let mut expect = 0u64;
        let mut weighted = Int::zero();
        for r in 0..=k / 2 {
            for s in 0..=(k - 2 * r).min(m) {
                let l = k - 2 * r - s;
                if s + l > m {
                    continue;
                }
                let arr: u64 = ((m - s - l + 1)..=(m - s)).map(|x| x as u64).product();
                let c = Int::binomial(m as u64, s as u64).to_i64().unwrap() as u64 * arr;
                expect += c;
                weighted = &weighted + &(&capacity(0, r as u64) * &Int::from(c as i64));
            }
        }
        let terms = enumerate_terms(n, m, k);
        assert_eq!(terms.len() as u64, expect);
        let total = terms.iter().fold(Int::zero(), |acc, t| &acc + &capacity(0, t.r as u64));
        assert_eq!(total, weighted);
    }

    #[test]
    fn rhs_examples() {
        let id = GroupRingVec::identity(2);
        let out = pieri_rhs_apply(2, 2, 2, &id, RepMode::CLASSICAL);
        assert_eq!(out, GroupRingVec::term(p("1,2"), poly("y1*y2 - t")));
        let q = pieri_rhs_apply(2, 2, 2, &id, RepMode::QUANTUM);
        assert_eq!(q, GroupRingVec::term(p("1,2"), poly("y1*y2 - t")));
    }

    #[test]
    fn rhs_matches_dunkl_evaluation_small() {
        for n in 2..=3 {
            for w in Permutation::all(n) {
                let v = GroupRingVec::basis(&w);
                let mut ev = DunklEvaluator::new(v.clone(), RepMode::CLASSICAL);
                for m in 1..=n {
                    for k in 0..=m {
                        let e: Poly = elementary(k as i64, &vars(Family::Z, 1..=m));
                        assert_eq!(pieri_rhs_apply(n, m, k, &v, RepMode::CLASSICAL), ev.eval(&e).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_small() {
        assert!(pieri_recursion_check(2, RepMode::CLASSICAL));
        assert!(pieri_recursion_check(3, RepMode::CLASSICAL));
        assert!(pieri_recursion_check(3, RepMode::QUANTUM));
    }

    #[test]
    fn path_rule_examples() {
        let out = equiv_pieri_expand(&p("1,2"), 1, 1);
        let mut expect = BTreeMap::new();
        expect.insert(p("2,1"), Poly::one());
        expect.insert(p("1,2"), poly("y1"));
        assert_eq!(out, expect);
        for w in Permutation::all(4) {
            let v = GroupRingVec::basis(&w);
            let mut ev = DunklEvaluator::new(v, RepMode::CLASSICAL_T0);
            for m in 1..4 {
                for k in 0..=m {
                    let e: Poly = elementary(k as i64, &vars(Family::Z, 1..=m));
                    let op = ev.eval(&e).unwrap();
                    let rule: BTreeMap<_, _> = equiv_pieri_expand(&w, m, k);
                    let op_map: BTreeMap<_, _> = op.entries().map(|(a, b)| (a.clone(), b.clone())).collect();
                    assert_eq!(rule, op_map, "w={w} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn struct_const_examples() {
        let (id, s1) = (p("1,2"), p("2,1"));
        assert!(struct_const_special(&id, &s1, 1, 1).unwrap().is_one());
        assert!(struct_const_special(&id, &id, 1, 1).unwrap().is_zero());
        for w in Permutation::all(4) {
            for u in Permutation::all(4) {
                for m in 1..4 {
                    for k in 1..=m {
                        let a = struct_const_special(&w, &u, m, k).unwrap();
                        let b = struct_const_special_by_operators(&w, &u, m, k).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn formatting() {
        let c = poly("(y1-y4)*(y1-y6)");
        assert_eq!(format_y_factored(&c, 9), "(y1-y4)*(y1-y6)");
        assert_eq!(format_alpha_factored(&c, 9), "(a1+a2+a3)*(a1+a2+a3+a4+a5)");
        assert!(is_alpha_positive(&c, 9));
        assert!(!is_alpha_positive(&poly("y2-y1"), 9));
    }
}
