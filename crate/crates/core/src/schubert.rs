//! Double, single and quantum double Schubert polynomials, the transition
//! formula, the classes `S_[m,k]`, and the type A coinvariant basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::bruhat_rep::{x_to_z, DunklEvaluator, GroupRingVec, RepMode};
use crate::error::{Error, Result};
use crate::polyring::{
    complete, elementary, rational, vars, Coeff, Family, Int, Poly, QPoly, Var,
};
use crate::symgroup::Permutation;

/// Largest rank at which the top polynomial `prod_{i+j<=n}(x_i - y_j)` is
/// expanded; larger permutations go through the transition formula.
const DIRECT_RANK_LIMIT: usize = 6;

/// `∂_{i_1} ∘ ... ∘ ∂_{i_l}` in one alphabet, the rightmost applied first.
pub fn apply_divided_differences<C: Coeff>(f: &Poly<C>, word: &[usize], family: Family) -> Poly<C> {
    let mut cur = f.clone();
    for &i in word.iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = cur.divided_difference(Var::of(family, i), Var::of(family, i + 1));
    }
    cur
}

/// `∏_{i+j<=n}(x_i - y_j)`.
pub fn top_double_schubert(n: usize) -> Poly {
    let mut p = Poly::one();
    for i in 1..n {
        for j in 1..=n - i {
            p = &p * &Poly::difference(Var::x(i), Var::y(j));
        }
    }
    p
}

/// Smallest `m >= 1` with `w` fixing `m+1..n`.
fn support_rank(w: &Permutation) -> usize {
    (1..=w.n()).rev().find(|&i| w.at(i) != i).unwrap_or(1)
}

fn restrict(w: &Permutation, m: usize) -> Permutation {
    Permutation::new(&w.one_line()[..m]).expect("w fixes the tail")
}

/// Memoized double Schubert polynomials of `S_n`, populated on demand by
/// `S_w = ∂_i S_{w s_i}` at an ascent `i` of `w`.
pub struct SchubertFamily {
    n: usize,
    table: RwLock<HashMap<Permutation, Arc<Poly>>>,
}

impl SchubertFamily {
    pub fn new(n: usize) -> SchubertFamily {
        let mut table = HashMap::new();
        table.insert(Permutation::longest(n), Arc::new(top_double_schubert(n)));
        SchubertFamily { n, table: RwLock::new(table) }
    }

    /// The process-wide family for rank `n`.
    pub fn shared(n: usize) -> Arc<SchubertFamily> {
        static FAMILIES: OnceLock<Mutex<HashMap<usize, Arc<SchubertFamily>>>> = OnceLock::new();
        let map = FAMILIES.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().expect("family registry poisoned");
        guard.entry(n).or_insert_with(|| Arc::new(SchubertFamily::new(n))).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, w: &Permutation) -> Arc<Poly> {
        assert_eq!(w.n(), self.n);
        if let Some(p) = self.table.read().expect("table poisoned").get(w) {
            return p.clone();
        }
        let i = (1..self.n).find(|&i| w.at(i) < w.at(i + 1)).expect("w != w0 has an ascent");
        let above = self.get(&w.transpose(i, i + 1));
        let p = Arc::new(above.divided_difference(Var::x(i), Var::x(i + 1)));
        self.table.write().expect("table poisoned").insert(w.clone(), p.clone());
        p
    }
}

/// `S_w(x, y) = ∂^{(x)}_{w^{-1} w_0} S_{w_0}(x, y)`.
pub fn double_schubert(w: &Permutation) -> Poly {
    let m = support_rank(w).max(2);
    if m <= DIRECT_RANK_LIMIT {
        let fam = SchubertFamily::shared(m);
        return (*fam.get(&restrict(w, m))).clone();
    }
    let mut memo = HashMap::new();
    double_schubert_by_transition(&restrict(w, m), &mut memo)
}

/// Double Schubert polynomial computed with the given reduced word of `w^{-1} w_0`.
pub fn double_schubert_via_word(w: &Permutation, word: &[usize]) -> Result<Poly> {
    let n = w.n();
    let target = w.inverse().compose(&Permutation::longest(n));
    if word.len() != target.length() || Permutation::from_word(n, word)? != target {
        return Err(Error::InvalidParameters(format!(
            "{word:?} is not a reduced word of w^-1 w0 for w = {w}"
        )));
    }
    Ok(apply_divided_differences(&top_double_schubert(n), word, Family::X))
}

/// `S_w(x) = S_w(x, 0)`.
pub fn schubert(w: &Permutation) -> Poly {
    double_schubert(w).kill(|v| v.family() == Family::Y)
}

/// The cyclic permutation `[m, k] = s_{m-k+1} s_{m-k+2} ... s_m` in `S_n`.
pub fn cyclic_permutation(m: usize, k: usize, n: usize) -> Result<Permutation> {
    check_special(m, k, n)?;
    let word: Vec<usize> = (m - k + 1..=m).collect();
    Permutation::from_word(n, &word)
}

fn check_special(m: usize, k: usize, n: usize) -> Result<()> {
    if k < 1 || k > m || m >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= m < n, got m={m}, k={k}, n={n}"
        )));
    }
    Ok(())
}

/// `S_[m,k](x, y) = sum_j e_{k-j}(x_1..x_m) h_j(-y_1..-y_{m-k+1})`.
pub fn special_double_schubert(m: usize, k: usize, n: usize) -> Result<Poly> {
    check_special(m, k, n)?;
    let xs = vars(Family::X, 1..=m);
    let ys = vars(Family::Y, 1..=m - k + 1);
    let mut out = Poly::zero();
    for j in 0..=k as i64 {
        out += &(&elementary::<Int>(k as i64 - j, &xs) * &complete::<Int>(j, &ys, true));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub r: usize,
    pub s: usize,
    pub u: Permutation,
    pub others: Vec<Permutation>,
}

/// Data of `S_w = (x_r - y_{u(r)}) S_u + sum_{v in S(w,r)} S_v`.
pub fn transition_expand(w: &Permutation) -> Result<Transition> {
    let r = w
        .descents()
        .last()
        .ok_or_else(|| Error::InvalidParameters("transition formula needs w != id".into()))?;
    let s = (r + 1..=w.n())
        .rev()
        .find(|&s| w.at(s) < w.at(r))
        .expect("r is a descent");
    let u = w.transpose(r, s);
    let l = w.length();
    let others = (1..r)
        .map(|j| u.transpose(j, r))
        .filter(|v| v.length() == l)
        .collect();
    Ok(Transition { r, s, u, others })
}

/// Double Schubert polynomial by the transition recursion.
pub fn double_schubert_by_transition(w: &Permutation, memo: &mut HashMap<Permutation, Poly>) -> Poly {
    if w.is_identity() {
        return Poly::one();
    }
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let tr = transition_expand(w).expect("w != id");
    let lin = Poly::difference(Var::x(tr.r), Var::y(tr.u.at(tr.r)));
    let mut out = &lin * &double_schubert_by_transition(&tr.u, memo);
    for v in &tr.others {
        out += &double_schubert_by_transition(v, memo);
    }
    memo.insert(w.clone(), out.clone());
    out
}

/// Expansion `f = sum_v c_v(y, ...) S_v(x, y)` over `S_n`, with
/// `c_v = (∂_v f)|_{x=y}`. Fails if `f` is not in the span.
pub fn expand_in_schubert_basis(f: &Poly, n: usize) -> Result<BTreeMap<Permutation, Poly>> {
    let x_to_y: HashMap<Var, Poly> = (1..=n).map(|i| (Var::x(i), Poly::var(Var::y(i)))).collect();
    let mut out = BTreeMap::new();
    let mut check = Poly::zero();
    for v in Permutation::all(n) {
        let c = apply_divided_differences(f, &v.reduced_word(), Family::X).substitute(&x_to_y);
        if !c.is_zero() {
            check += &(&c * &double_schubert(&v));
            out.insert(v, c);
        }
    }
    if &check != f {
        return Err(Error::InvalidParameters(format!(
            "polynomial is not in the span of the Schubert polynomials of S_{n}"
        )));
    }
    Ok(out)
}

/// A quantum double Schubert polynomial with its expansion data.
#[derive(Clone, Debug)]
pub struct QuantumSchubert {
    pub w: Permutation,
    pub poly: Poly,
    /// `b_v` with `S^q_w = sum_v b_v S_v(x, y)`; polynomials in `q` and `y`.
    pub coefficients: BTreeMap<Permutation, Poly>,
    /// Support elements `v` with `v ≰ w` in Bruhat order.
    pub non_bruhat_support: Vec<Permutation>,
    /// Support elements whose coefficient involves `y`.
    pub y_dependent: Vec<Permutation>,
}

/// Every term carries a `q` and there are no `x`, `z` or `t`.
fn in_q_ideal(c: &Poly) -> bool {
    c.terms().all(|(m, _)| {
        m.family_degree(Family::Q) > 0
            && m.iter().all(|(v, _)| matches!(v.family(), Family::Q | Family::Y))
    })
}

/// All quantum double Schubert polynomials of `S_n`, by the unitriangular
/// solve against `S_v(θ, y)(id)` in the quantum representation at `t = 0`.
pub fn quantum_double_schubert_all(n: usize) -> Result<BTreeMap<Permutation, QuantumSchubert>> {
    let mut perms = Permutation::all(n);
    perms.sort_by_key(|w| w.length());
    let mut eval = DunklEvaluator::new(GroupRingVec::identity(n), RepMode::QUANTUM_T0);
    // b[w] = coefficients of S^q_w in the classical Schubert basis
    let mut b: BTreeMap<Permutation, BTreeMap<Permutation, Poly>> = BTreeMap::new();
    for w in &perms {
        let mv = eval.eval(&x_to_z(&double_schubert(w)))?;
        let mut coeffs: BTreeMap<Permutation, Poly> = BTreeMap::new();
        coeffs.insert(w.clone(), Poly::one());
        for (u, c) in mv.entries() {
            if u == w {
                if !c.is_one() {
                    return Err(Error::Inconsistent(format!(
                        "diagonal coefficient of {w} is {c}, expected 1"
                    )));
                }
                continue;
            }
            if u.length() >= w.length() {
                return Err(Error::Inconsistent(format!(
                    "S_{w}(θ,y)(id) has the term {u} of length >= l(w)"
                )));
            }
            if !in_q_ideal(c) {
                return Err(Error::Inconsistent(format!(
                    "correction coefficient {c} at {u} does not lie in the q-ideal"
                )));
            }
            for (v, bv) in &b[u] {
                let e = coeffs.entry(v.clone()).or_default();
                *e -= &(c * bv);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        b.insert(w.clone(), coeffs);
    }
    let mut out = BTreeMap::new();
    for (w, coeffs) in b {
        let poly = coeffs.iter().map(|(v, c)| c * &double_schubert(v)).sum();
        let non_bruhat_support = coeffs.keys().filter(|v| !v.bruhat_le(&w)).cloned().collect();
        let y_dependent = coeffs
            .iter()
            .filter(|(_, c)| c.has_family(Family::Y))
            .map(|(v, _)| v.clone())
            .collect();
        out.insert(
            w.clone(),
            QuantumSchubert { w, poly, coefficients: coeffs, non_bruhat_support, y_dependent },
        );
    }
    Ok(out)
}

pub fn quantum_double_schubert(w: &Permutation) -> Result<QuantumSchubert> {
    let all = quantum_double_schubert_all(w.n())?;
    Ok(all[w].clone())
}

/// Outcome of re-checking the three characterizing conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantumConditions {
    pub classical_limit: bool,
    pub triangular: bool,
    pub bruhat_supported: bool,
    pub evaluates_to_w: bool,
}

impl QuantumConditions {
    /// Conditions (1) and (3) plus the length-filtered form of (2); Bruhat
    /// support is reported separately.
    pub fn holds(&self) -> bool {
        self.classical_limit && self.triangular && self.evaluates_to_w
    }
}

pub fn check_quantum_conditions(qs: &QuantumSchubert) -> Result<QuantumConditions> {
    let n = qs.w.n();
    let classical = double_schubert(&qs.w);
    let at_q0 = qs.poly.kill(|v| v.family() == Family::Q);
    let triangular = qs.coefficients.iter().all(|(v, c)| {
        if v == &qs.w {
            c.is_one()
        } else {
            v.length() < qs.w.length() && in_q_ideal(c)
        }
    });
    let image = crate::bruhat_rep::evaluate_at_dunkl(
        &x_to_z(&qs.poly),
        &GroupRingVec::identity(n),
        RepMode::QUANTUM_T0,
    )?;
    Ok(QuantumConditions {
        classical_limit: at_q0 == classical,
        triangular,
        bruhat_supported: qs.non_bruhat_support.is_empty(),
        evaluates_to_w: image == GroupRingVec::basis(&qs.w),
    })
}

/// `X_{w_0} = (1/n!) ∏_{i<j}(y_i - y_j)` and `X_w = ∂_{w^{-1} w_0} X_{w_0}`.
pub fn coinvariant_basis_type_a(n: usize) -> BTreeMap<Permutation, QPoly> {
    let order = Int::factorial(n as u64).to_i64().expect("n! fits in i64");
    let mut top = QPoly::constant(rational(1, order));
    for i in 1..=n {
        for j in i + 1..=n {
            top = &top * &QPoly::difference(Var::y(i), Var::y(j));
        }
    }
    let w0 = Permutation::longest(n);
    Permutation::all(n)
        .into_iter()
        .map(|w| {
            let word = w.inverse().compose(&w0).reduced_word();
            let xw = apply_divided_differences(&top, &word, Family::Y);
            (w, xw)
        })
        .collect()
}

/// Pairs `(w, v)` where `CT(∂_w X_v) != δ_{wv}`.
pub fn coinvariant_duality_failures(n: usize) -> Vec<(Permutation, Permutation)> {
    let basis = coinvariant_basis_type_a(n);
    let mut bad = Vec::new();
    for w in basis.keys() {
        let word = w.reduced_word();
        for (v, xv) in &basis {
            let ct = apply_divided_differences(xv, &word, Family::Y).constant_term();
            let expect = rational(i64::from(v == w), 1);
            if ct != expect {
                bad.push((w.clone(), v.clone()));
            }
        }
    }
    bad
}

/// Permutations appearing in any Schubert expansion, for reporting.
pub fn support(coeffs: &BTreeMap<Permutation, Poly>) -> BTreeSet<Permutation> {
    coeffs.keys().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat_rep::evaluate_at_dunkl;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, None).unwrap()
    }
    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn double_schubert_examples() {
        assert!(double_schubert(&Permutation::identity(3)).is_one());
        assert_eq!(
            double_schubert(&Permutation::longest(3)),
            poly("(x1-y1)*(x1-y2)*(x2-y1)")
        );
        assert_eq!(double_schubert(&p("2,1")), poly("x1 - y1"));
        assert!(SchubertFamily::new(3).get(&Permutation::identity(3)).is_one());
    }

    #[test]
    fn single_schubert_examples() {
        assert!(schubert(&Permutation::identity(4)).is_one());
        assert_eq!(schubert(&p("2,1")), poly("x1"));
        assert_eq!(schubert(&p("1,3,2")), poly("x1 + x2"));
    }

    #[test]
    fn special_examples() {
        assert_eq!(special_double_schubert(1, 1, 2).unwrap(), poly("x1 - y1"));
        assert_eq!(special_double_schubert(2, 1, 3).unwrap(), poly("x1 + x2 - y1 - y2"));
        let xs = vars(Family::X, 1..=5);
        let expect: Poly = (0..=5)
            .map(|j| &(-Poly::var(Var::y(1))).pow(j as u32) * &elementary::<Int>(5 - j, &xs))
            .sum();
        assert_eq!(special_double_schubert(5, 5, 9).unwrap(), expect);
        assert!(special_double_schubert(3, 4, 5).is_err());
        assert!(special_double_schubert(3, 2, 3).is_err());
        for n in 2..=5 {
            for m in 1..n {
                for k in 1..=m {
                    let w = cyclic_permutation(m, k, n).unwrap();
                    assert_eq!(special_double_schubert(m, k, n).unwrap(), double_schubert(&w));
                }
            }
        }
    }

    #[test]
    fn transition_examples() {
        let tr = transition_expand(&p("2,1")).unwrap();
        assert_eq!((tr.r, tr.u.clone()), (1, Permutation::identity(2)));
        assert!(tr.others.is_empty());
        assert!(transition_expand(&Permutation::identity(3)).is_err());
        for w in Permutation::all(4) {
            let mut memo = HashMap::new();
            assert_eq!(double_schubert_by_transition(&w, &mut memo), double_schubert(&w), "{w}");
        }
        let mut memo = HashMap::new();
        double_schubert_by_transition(&Permutation::longest(3), &mut memo);
        assert!(memo.keys().all(|v| v.n() == 3));
    }

    #[test]
    fn reduced_word_independence_and_stability() {
        for n in 2..=4 {
            let w0 = Permutation::longest(n);
            for w in Permutation::all(n) {
                let target = w.inverse().compose(&w0);
                let a = target.reduced_word();
                // reversed canonical word of the inverse is another reduced word
                let mut b = target.inverse().reduced_word();
                b.reverse();
                let pa = double_schubert_via_word(&w, &a).unwrap();
                let pb = double_schubert_via_word(&w, &b).unwrap();
                assert_eq!(pa, pb);
                assert_eq!(pa, double_schubert(&w));
                assert_eq!(double_schubert(&w.embed(n + 1)), pa);
                assert_eq!(pa.degree().unwrap_or(0) as usize, w.length());
            }
        }
    }

    #[test]
    fn theorem_on_identity_small() {
        for w in Permutation::all(3) {
            let f = x_to_z(&double_schubert(&w));
            let out = evaluate_at_dunkl(&f, &GroupRingVec::identity(3), RepMode::CLASSICAL_T0).unwrap();
            assert_eq!(out, GroupRingVec::basis(&w));
        }
    }

    #[test]
    fn quantum_examples() {
        let all = quantum_double_schubert_all(3).unwrap();
        assert!(all[&Permutation::identity(3)].poly.is_one());
        let at_y0 = |w: &str| all[&p(w)].poly.kill(|v| v.family() == Family::Y);
        assert_eq!(at_y0("2,3,1"), poly("x1*x2 + q1"));
        assert_eq!(at_y0("3,1,2"), poly("x1^2 - q1"));
        assert_eq!(at_y0("3,2,1"), poly("x1^2*x2 + q1*x1"));
        let w0 = &all[&Permutation::longest(3)];
        assert_eq!(w0.poly, poly("(x1-y2)*((x1-y1)*(x2-y1) + q1)"));
        assert_eq!(w0.y_dependent, vec![Permutation::identity(3)]);
        for qs in all.values() {
            let c = check_quantum_conditions(qs).unwrap();
            assert!(c.holds() && c.bruhat_supported, "{:?}", qs.w);
        }
        let s1 = quantum_double_schubert(&p("2,1")).unwrap();
        assert_eq!(s1.poly, poly("x1 - y1"));
    }

    #[test]
    fn schubert_basis_expansion() {
        let f = poly("x1*x2 + 3*x1 - y2");
        let c = expand_in_schubert_basis(&f, 3).unwrap();
        let back: Poly = c.iter().map(|(v, cv)| cv * &double_schubert(v)).sum();
        assert_eq!(back, f);
        assert!(expand_in_schubert_basis(&poly("x3"), 3).is_err());
    }

    #[test]
    fn coinvariant_examples() {
        let b = coinvariant_basis_type_a(2);
        let half: QPoly = "1/2*y1 - 1/2*y2".parse().unwrap();
        assert_eq!(b[&Permutation::longest(2)], half);
        assert!(b[&Permutation::identity(2)].is_one());
        for n in 2..=4 {
            assert!(coinvariant_duality_failures(n).is_empty());
        }
    }
}
