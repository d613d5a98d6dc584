use std::collections::HashMap;

use super::coeff::Coeff;
use super::poly::Poly;
use super::var::Var;

/// How quantum parameters enter: general `q_ij`, or the specialization
/// `q_{i,i+1} = q_i` and `q_ij = 0` for `j > i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    General,
    Specialized,
}

/// The quantum parameter attached to the index pair `{a, b}`.
pub fn q_param<C: Coeff>(a: usize, b: usize, mode: QMode) -> Poly<C> {
    match mode {
        QMode::General => Poly::var(Var::q_pair(a, b)),
        QMode::Specialized if a.abs_diff(b) == 1 => Poly::var(Var::q(a.min(b))),
        QMode::Specialized => Poly::zero(),
    }
}

/// `e_k(vars)`; 1 for `k = 0`, 0 for `k < 0` or `k > |vars|`.
pub fn elementary<C: Coeff>(k: i64, vars: &[Var]) -> Poly<C> {
    if k < 0 || k as usize > vars.len() {
        return Poly::zero();
    }
    let k = k as usize;
    // row[j] = e_j of the variables seen so far
    let mut row: Vec<Poly<C>> = vec![Poly::zero(); k + 1];
    row[0] = Poly::one();
    for &v in vars {
        let x = Poly::var(v);
        for j in (1..=k).rev() {
            let add = &row[j - 1] * &x;
            row[j] += &add;
        }
    }
    row.swap_remove(k)
}

/// `h_j(vars)`, or `h_j(-vars)` when `negate` is set.
pub fn complete<C: Coeff>(j: i64, vars: &[Var], negate: bool) -> Poly<C> {
    if j < 0 {
        return Poly::zero();
    }
    let j = j as usize;
    let mut row: Vec<Poly<C>> = vec![Poly::zero(); j + 1];
    row[0] = Poly::one();
    for &v in vars {
        let x = if negate { -Poly::var(v) } else { Poly::var(v) };
        for d in 1..=j {
            let add = &row[d - 1] * &x;
            row[d] += &add;
        }
    }
    row.swap_remove(j)
}

/// Quantum elementary polynomial `e_k^q` in the given variables, built by
/// inserting the variables in the order given. The quantum parameter of a
/// pair of variables is indexed by the variables' own indices.
pub fn quantum_elementary<C: Coeff>(k: i64, vars: &[Var], mode: QMode) -> Poly<C> {
    let mut memo = HashMap::new();
    let all = if vars.is_empty() { 0 } else { (1u64 << vars.len()) - 1 };
    qe_rec(k, all, vars, mode, &mut memo)
}

fn qe_rec<C: Coeff>(
    k: i64,
    set: u64,
    vars: &[Var],
    mode: QMode,
    memo: &mut HashMap<(i64, u64), Poly<C>>,
) -> Poly<C> {
    if k == 0 {
        return Poly::one();
    }
    if k < 0 || set == 0 {
        return Poly::zero();
    }
    if let Some(p) = memo.get(&(k, set)) {
        return p.clone();
    }
    // The most recently inserted variable is the highest set position.
    let top = 63 - set.leading_zeros() as usize;
    let rest = set & !(1u64 << top);
    let xj = Poly::var(vars[top]);
    let mut out = qe_rec(k, rest, vars, mode, memo);
    out += &(&xj * &qe_rec(k - 1, rest, vars, mode, memo));
    for a in 0..top {
        if rest & (1 << a) != 0 {
            let q = q_param::<C>(vars[a].index(), vars[top].index(), mode);
            if !q.is_zero() {
                out += &(&q * &qe_rec(k - 2, rest & !(1 << a), vars, mode, memo));
            }
        }
    }
    memo.insert((k, set), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Family, Int};

    fn ys(n: usize) -> Vec<Var> {
        (1..=n).map(Var::y).collect()
    }

    #[test]
    fn elementary_examples() {
        assert!(elementary::<Int>(0, &[Var::x(1), Var::x(2)]).is_one());
        assert!(elementary::<Int>(-1, &[Var::x(1)]).is_zero());
        let e2: Poly = elementary(2, &ys(3));
        assert_eq!(e2, "y1*y2 + y1*y3 + y2*y3".parse().unwrap());
        assert!(elementary::<Int>(4, &ys(3)).is_zero());
    }

    #[test]
    fn complete_examples() {
        assert!(complete::<Int>(0, &ys(1), true).is_one());
        assert_eq!(complete::<Int>(1, &ys(2), true), "-y1 - y2".parse().unwrap());
        assert_eq!(complete::<Int>(2, &ys(1), true), "y1^2".parse().unwrap());
        assert_eq!(
            complete::<Int>(2, &ys(2), false),
            "y1^2 + y1*y2 + y2^2".parse().unwrap()
        );
    }

    #[test]
    fn quantum_elementary_examples() {
        let z: Vec<Var> = (1..=2).map(Var::z).collect();
        assert!(quantum_elementary::<Int>(0, &z, QMode::General).is_one());
        assert!(quantum_elementary::<Int>(1, &[], QMode::General).is_zero());
        assert_eq!(
            quantum_elementary::<Int>(2, &z, QMode::General),
            "z1*z2 + q1_2".parse().unwrap()
        );
        assert_eq!(
            quantum_elementary::<Int>(2, &z, QMode::Specialized),
            "z1*z2 + q1".parse().unwrap()
        );
    }

    #[test]
    fn quantum_elementary_at_q_zero_is_elementary() {
        for m in 0..=6 {
            let z: Vec<Var> = (1..=m).map(Var::z).collect();
            for k in -1..=(m as i64 + 1) {
                let q: Poly = quantum_elementary(k, &z, QMode::General);
                let q0 = q.kill(|v| v.family() == Family::QPair);
                assert_eq!(q0, elementary(k, &z));
            }
        }
    }

    #[test]
    fn quantum_elementary_is_order_independent() {
        let z: Vec<Var> = (1..=5).map(Var::z).collect();
        let orders: [[usize; 5]; 3] = [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3], [1, 3, 0, 4, 2]];
        for k in 0..=5 {
            let base: Poly = quantum_elementary(k, &z, QMode::General);
            for ord in &orders {
                let perm: Vec<Var> = ord.iter().map(|&i| z[i]).collect();
                assert_eq!(quantum_elementary::<Int>(k, &perm, QMode::General), base);
            }
        }
    }
}
