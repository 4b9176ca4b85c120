//! Exact two-phase simplex, used when elimination grows too large.
//!
//! Strict rows get a common slack `t`: the system is feasible iff the
//! non-strict relaxation with `a x + t <= b` on strict rows has an optimum
//! `t > 0`. On infeasibility the final objective row holds the dual
//! multipliers, which form the same kind of certificate elimination gives.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::{AsIneq, Certificate, Feasibility, Refutation, Source, Var};
use crate::semantics::Q;

pub(crate) struct Overflow;

pub(crate) trait Field: Clone + PartialEq + PartialOrd + Sized {
    fn from_q(q: &Q) -> Option<Self>;
    fn to_q(&self) -> Q;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sign(&self) -> i8;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

type R64 = Ratio<i64>;

impl Field for R64 {
    fn from_q(q: &Q) -> Option<Self> {
        Some(R64::new_raw(q.numer().to_i64()?, q.denom().to_i64()?))
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn zero() -> Self {
        <R64 as Zero>::zero()
    }
    fn one() -> Self {
        <R64 as One>::one()
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn sign(&self) -> i8 {
        self.numer().signum() as i8
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Field for Q {
    fn from_q(q: &Q) -> Option<Self> {
        Some(q.clone())
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

/// `basic[i] = rows[i][0] + sum_k rows[i][k + 1] * nonbasic[k]`, all
/// variables non-negative.
struct Dict<F> {
    rows: Vec<Vec<F>>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

/// What a variable id stands for.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    X(usize),
    T,
    /// Slack of constraint row `i`.
    Slack(usize),
    Aux,
}

struct Lp<F> {
    dict: Dict<F>,
    kinds: Vec<Kind>,
}

fn ov<T>(x: Option<T>) -> Result<T, Overflow> {
    x.ok_or(Overflow)
}

impl<F: Field> Dict<F> {
    /// Exchanges the basic variable of row `r` with the nonbasic one in
    /// column `c` (1-based into the row).
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [F]) -> Result<(), Overflow> {
        let a = self.rows[r][c].clone();
        let inv = ov(F::one().div(&a))?;
        let mut pr = std::mem::take(&mut self.rows[r]);
        let neg_inv = ov(F::zero().sub(&inv))?;
        for (k, v) in pr.iter_mut().enumerate() {
            *v = if k == c { inv.clone() } else { ov(v.mul(&neg_inv))? };
        }
        let nz: Vec<usize> = (0..pr.len()).filter(|&k| !pr[k].is_zero()).collect();
        let update = |row: &mut Vec<F>| -> Result<(), Overflow> {
            let f = row[c].clone();
            if f.is_zero() {
                return Ok(());
            }
            row[c] = F::zero();
            for &k in &nz {
                row[k] = ov(row[k].add(&ov(f.mul(&pr[k]))?))?;
            }
            Ok(())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row)?;
            }
        }
        let mut o = obj.to_vec();
        update(&mut o)?;
        obj.clone_from_slice(&o);
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[c - 1]);
        self.rows[r] = pr;
        Ok(())
    }

    /// Maximizes `obj` with Bland's rule. The problem is bounded here.
    fn optimize(&mut self, obj: &mut [F]) -> Result<(), Overflow> {
        loop {
            let enter = (1..obj.len())
                .filter(|&k| obj[k].sign() > 0)
                .min_by_key(|&k| self.nonbasic[k - 1]);
            let Some(c) = enter else {
                return Ok(());
            };
            let mut best: Option<(F, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].sign() < 0 {
                    let ratio = ov(row[0].div(&ov(F::zero().sub(&row[c]))?))?;
                    let better = match &best {
                        None => true,
                        Some((b, j)) => ratio < *b || (ratio == *b && self.basic[i] < self.basic[*j]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let (_, r) = best.expect("bounded problem");
            self.pivot(r, c, obj)?;
        }
    }
}

/// `sum coefs x + sigma t <= b`, with `sigma = 1` on strict rows.
type Row<F> = (Vec<(usize, F)>, bool, F);

enum Outcome {
    Sat(BTreeMap<Var, Q>),
    Unsat(Certificate),
}

fn solve<F: Field, S: AsIneq>(sys: &[S], vars: &[Var]) -> Result<Outcome, Overflow> {
    let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let nx = vars.len();
    // Constraint rows: inputs, upper bounds, then t <= 1.
    let mut cons: Vec<Row<F>> = Vec::new();
    let mut scales = Vec::new();
    for q in sys {
        let row = q.int_row();
        let mut coefs = Vec::new();
        for (v, c) in &row.terms {
            coefs.push((index[v], ov(F::from_q(&Q::from_integer(c.clone())))?));
        }
        let b = ov(F::from_q(&Q::from_integer(-row.k.clone())))?;
        cons.push((coefs, row.strict, b));
        scales.push(row.scale.clone());
    }
    for j in 0..nx {
        cons.push((vec![(j, F::one())], false, F::one()));
    }
    let t_row = cons.len();
    // Variable ids: x_0..x_{nx-1}, t, slacks, aux.
    let t_id = nx;
    let slack = |i: usize| nx + 1 + i;
    let aux_id = nx + 1 + cons.len() + 1;
    let mut kinds: Vec<Kind> = (0..nx).map(Kind::X).collect();
    kinds.push(Kind::T);
    kinds.extend((0..=cons.len()).map(Kind::Slack));
    kinds.push(Kind::Aux);

    let ncols = nx + 2; // constant, x's, t
    let mut rows = Vec::new();
    let mut basic = Vec::new();
    for (i, (coefs, strict, b)) in cons.iter().enumerate() {
        let mut r = vec![F::zero(); ncols + 1];
        r[0] = b.clone();
        for (j, c) in coefs {
            r[j + 1] = ov(r[j + 1].sub(c))?;
        }
        if *strict {
            r[nx + 1] = ov(F::zero().sub(&F::one()))?;
        }
        rows.push(r);
        basic.push(slack(i));
    }
    {
        let mut r = vec![F::zero(); ncols + 1];
        r[0] = F::one();
        r[nx + 1] = ov(F::zero().sub(&F::one()))?;
        rows.push(r);
        basic.push(slack(t_row));
    }
    let mut nonbasic: Vec<usize> = (0..=nx).collect();
    nonbasic.push(aux_id);
    // The aux column is the last one: +1 in every row.
    for r in rows.iter_mut() {
        r[ncols] = F::one();
    }
    let mut lp = Lp {
        dict: Dict { rows, basic, nonbasic },
        kinds,
    };

    // Phase 1: maximize -aux.
    let worst = (0..lp.dict.rows.len())
        .filter(|&i| lp.dict.rows[i][0].sign() < 0)
        .min_by(|&a, &b| lp.dict.rows[a][0].partial_cmp(&lp.dict.rows[b][0]).expect("total order"));
    if let Some(r) = worst {
        let mut obj = vec![F::zero(); ncols + 1];
        obj[ncols] = ov(F::zero().sub(&F::one()))?;
        lp.dict.pivot(r, ncols, &mut obj)?;
        lp.dict.optimize(&mut obj)?;
        if obj[0].sign() < 0 {
            return Ok(Outcome::Unsat(lp.certificate(&obj, &scales, vars, t_row)));
        }
        // Drive aux out of the basis if it stayed at zero.
        if let Some(r) = lp.dict.basic.iter().position(|&b| b == aux_id) {
            match (1..lp.dict.rows[r].len()).find(|&k| !lp.dict.rows[r][k].is_zero()) {
                Some(c) => lp.dict.pivot(r, c, &mut obj)?,
                None => {
                    lp.dict.rows.remove(r);
                    lp.dict.basic.remove(r);
                }
            }
        }
    }
    // Drop the aux column.
    let col = lp.dict.nonbasic.iter().position(|&v| v == aux_id).expect("aux is nonbasic") + 1;
    lp.dict.nonbasic.remove(col - 1);
    for r in lp.dict.rows.iter_mut() {
        r.remove(col);
    }

    // Phase 2: maximize t.
    let mut obj = match lp.dict.basic.iter().position(|&b| b == t_id) {
        Some(r) => lp.dict.rows[r].clone(),
        None => {
            let mut o = vec![F::zero(); lp.dict.nonbasic.len() + 1];
            let c = lp.dict.nonbasic.iter().position(|&v| v == t_id).expect("t is somewhere") + 1;
            o[c] = F::one();
            o
        }
    };
    lp.dict.optimize(&mut obj)?;
    if obj[0].sign() <= 0 {
        return Ok(Outcome::Unsat(lp.certificate(&obj, &scales, vars, t_row)));
    }
    let mut model: BTreeMap<Var, Q> = vars.iter().map(|v| (*v, <Q as Zero>::zero())).collect();
    for (i, &b) in lp.dict.basic.iter().enumerate() {
        if let Kind::X(j) = lp.kinds[b] {
            model.insert(vars[j], lp.dict.rows[i][0].to_q());
        }
    }
    Ok(Outcome::Sat(model))
}

impl<F: Field> Lp<F> {
    /// Reads multipliers off an optimal objective row: `-d` for every
    /// nonbasic slack (its constraint) and nonbasic `x` (its lower bound).
    fn certificate(&self, obj: &[F], scales: &[Q], vars: &[Var], t_row: usize) -> Certificate {
        let inputs = scales.len();
        let mut combination = Vec::new();
        for (k, &v) in self.dict.nonbasic.iter().enumerate() {
            let m = -obj[k + 1].to_q();
            if Zero::is_zero(&m) {
                continue;
            }
            match self.kinds[v] {
                Kind::Slack(i) if i < inputs => combination.push((Source::Input(i), m * &scales[i])),
                Kind::Slack(i) if i < t_row => combination.push((Source::Upper(vars[i - inputs]), m)),
                Kind::X(j) => combination.push((Source::Lower(vars[j]), m)),
                Kind::Slack(_) | Kind::T | Kind::Aux => {}
            }
        }
        combination.sort_by_key(|c| c.0);
        Certificate { combination }
    }
}

/// Decides `sys` with `0 <= v <= 1` on every variable of `sys` and `extra`.
pub(crate) fn simplex_feasible<S: AsIneq>(sys: &[S], extra: &BTreeSet<Var>) -> Feasibility {
    let mut all = extra.clone();
    for q in sys {
        all.extend(q.int_row().terms.iter().map(|(v, _)| *v));
    }
    let vars: Vec<Var> = all.into_iter().collect();
    let out = match solve::<R64, S>(sys, &vars) {
        Ok(o) => o,
        Err(Overflow) => match solve::<Q, S>(sys, &vars) {
            Ok(o) => o,
            Err(Overflow) => unreachable!("big rationals do not overflow"),
        },
    };
    match out {
        Outcome::Sat(m) => Feasibility::Sat(m),
        Outcome::Unsat(c) => Feasibility::Unsat(Refutation::Farkas(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{model_satisfies, AffineExpr, LinIneq};
    use crate::semantics::q;

    fn x(i: u32) -> AffineExpr {
        AffineExpr::var(Var::Param(i))
    }

    fn c(n: i64, d: i64) -> AffineExpr {
        AffineExpr::constant(q(n, d))
    }

    fn check(sys: &[LinIneq], sat: bool) {
        match simplex_feasible(sys, &BTreeSet::new()) {
            Feasibility::Sat(m) => {
                assert!(sat, "expected unsat, got {m:?}");
                assert!(model_satisfies(sys, &m, &BTreeSet::new()));
            }
            Feasibility::Unsat(Refutation::Farkas(cert)) => {
                assert!(!sat, "expected sat");
                assert!(cert.check(sys), "{}", cert.render(sys));
            }
            Feasibility::Unsat(r) => panic!("{r:?}"),
        }
    }

    #[test]
    fn small_systems() {
        check(&[LinIneq::le(x(0), c(1, 2)), LinIneq::ge(x(0), c(3, 4))], false);
        check(&[LinIneq::lt(x(0), c(1, 1))], true);
        check(&[LinIneq::le(x(0) + x(1), c(1, 1)), LinIneq::ge(x(0), c(2, 3)), LinIneq::ge(x(1), c(2, 3))], false);
        check(&[LinIneq::lt(x(0), x(1)), LinIneq::lt(x(1), x(0))], false);
        check(&[LinIneq::le(x(0), x(1)), LinIneq::le(x(1), x(0))], true);
        check(&[LinIneq::lt(x(0), c(0, 1))], false);
        check(&[LinIneq::gt(x(0), c(1, 1))], false);
        check(&[LinIneq::ge(x(0) + x(1), c(3, 2)), LinIneq::lt(x(0), c(1, 2))], false);
        check(&[LinIneq::ge(x(0) + x(1), c(3, 2)), LinIneq::le(x(0), c(1, 2))], true);
        check(&[], true);
    }

    fn arb_ineq() -> impl proptest::strategy::Strategy<Value = LinIneq> {
        use proptest::prelude::*;
        (prop::collection::vec(-3i64..=3, 3), -4i64..=4, 1i64..=3, any::<bool>()).prop_map(|(cs, k, d, strict)| {
            let mut lhs = AffineExpr::default();
            for (i, c) in cs.iter().enumerate() {
                lhs.add_term(Var::Param(i as u32), &q(*c, 1));
            }
            if strict {
                LinIneq::lt(lhs, c(k, d))
            } else {
                LinIneq::le(lhs, c(k, d))
            }
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(500))]
        #[test]
        fn agrees_with_elimination(sys in proptest::collection::vec(arb_ineq(), 0..7)) {
            let fm = crate::linear::fm_feasible(&sys, &BTreeSet::new()).is_sat();
            check(&sys, fm);
        }
    }
}
