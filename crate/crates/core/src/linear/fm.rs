//! Fourier–Motzkin elimination with exact integer rows.
//!
//! Rows have the form `sum a_i x_i + k <= 0` with coprime integer
//! coefficients. A strict input `e < 0` becomes `e + eps <= 0` for an extra
//! column `eps` that is never eliminated; the system is feasible iff the
//! final rows admit some `eps > 0`. Since all multipliers are positive the
//! `eps` coefficient stays non-negative, so the final check reduces to:
//! no row `k <= 0` with `k > 0` and no row `a eps + k <= 0` with `a > 0,
//! k >= 0`.
//!
//! Redundant rows are pruned with Chernikov's rule (after eliminating `t`
//! variables, a row built from more than `t + 1` input rows is implied by
//! the others) and by keeping only the tightest row per coefficient vector.
//!
//! Elimination first runs on machine integers and is repeated with big
//! integers if any intermediate coefficient overflows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::bmip::Refutation;
use super::simplex::simplex_feasible;
use super::{model_satisfies, AsIneq, Certificate, Feasibility, Source, Var};
use crate::semantics::Q;

/// Integer coefficients; `None` from an operation means overflow.
trait Int: Clone + Eq + Hash + Ord + Debug {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn sign(&self) -> i8;
}

impl Int for i64 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64().filter(|&x| x != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o).filter(|&x| x != i64::MIN)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o).filter(|&x| x != i64::MIN)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
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
}

enum Stop {
    Overflow,
    /// The row store passed [`ROW_CAP`].
    TooBig,
}

/// Beyond this many rows elimination hands over to the simplex.
const ROW_CAP: usize = 30_000;

type Coefs<I> = Vec<(u32, I)>;

#[derive(Clone, Debug)]
enum Origin<I> {
    /// `row = scale * source`.
    Source(usize, Q),
    /// `row = (ma * a + mb * b) / div`.
    Combo { a: usize, ma: I, b: usize, mb: I, div: I },
}

#[derive(Clone, Debug)]
struct Row<I> {
    coefs: Coefs<I>,
    k: I,
    hist: Vec<u64>,
    origin: Origin<I>,
}

impl<I: Int> Row<I> {
    fn coef(&self, var: u32) -> Option<&I> {
        self.coefs
            .binary_search_by_key(&var, |(v, _)| *v)
            .ok()
            .map(|i| &self.coefs[i].1)
    }

    fn hist_len(&self) -> u32 {
        self.hist.iter().map(|w| w.count_ones()).sum()
    }
}

fn normalize<I: Int>(coefs: &mut Coefs<I>, k: &mut I) -> I {
    let one = I::one();
    let mut g = if k.sign() < 0 { k.neg().expect("nonzero gcd input") } else { k.clone() };
    for (_, c) in coefs.iter() {
        g = g.gcd(c);
        if g == one {
            return g;
        }
    }
    if g.sign() == 0 || g == one {
        return one;
    }
    for (_, c) in coefs.iter_mut() {
        *c = c.div_exact(&g);
    }
    *k = k.div_exact(&g);
    g
}

enum Outcome {
    Feasible {
        stages: Vec<(u32, Vec<usize>)>,
        finals: Vec<usize>,
    },
    Infeasible(usize),
}

/// Live rows during elimination: one per coefficient vector, with
/// per-variable occurrence lists (possibly holding dead rows) and counts of
/// positive and negative occurrences.
struct State<I> {
    alive: Vec<bool>,
    index: FxHashMap<Coefs<I>, usize>,
    occ: Vec<Vec<usize>>,
    pos: Vec<i64>,
    neg: Vec<i64>,
}

impl<I> State<I> {
    fn is_alive(&self, r: usize) -> bool {
        self.alive.get(r).copied().unwrap_or(false)
    }
}

struct Solver<I> {
    vars: Vec<Var>,
    eps: u32,
    sources: Vec<Source>,
    rows: Vec<Row<I>>,
}

impl<I: Int> Solver<I> {
    fn new<S: AsIneq>(sys: &[S], vars: Vec<Var>) -> Result<Self, Stop> {
        let index: FxHashMap<Var, u32> = vars.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let eps = vars.len() as u32;

        let mut sources = Vec::new();
        let mut pending: Vec<(Coefs<I>, I, Q)> = Vec::new();
        for (i, q) in sys.iter().enumerate() {
            let row = q.int_row();
            let mut coefs: Coefs<I> = row
                .terms
                .iter()
                .map(|(v, c)| I::from_big(c).map(|c| (index[v], c)))
                .collect::<Option<_>>()
                .ok_or(Stop::Overflow)?;
            coefs.sort_by_key(|(v, _)| *v);
            let k = I::from_big(&row.k).ok_or(Stop::Overflow)?;
            if row.strict {
                coefs.push((eps, I::one()));
            }
            sources.push(Source::Input(i));
            pending.push((coefs, k, row.scale.clone()));
        }
        let minus_one = I::one().neg().expect("-1 fits");
        for (i, v) in vars.iter().enumerate() {
            sources.push(Source::Lower(*v));
            pending.push((vec![(i as u32, minus_one.clone())], I::zero(), Q::one()));
            sources.push(Source::Upper(*v));
            pending.push((vec![(i as u32, I::one())], minus_one.clone(), Q::one()));
        }
        let words = sources.len().div_ceil(64);
        let rows = pending
            .into_iter()
            .enumerate()
            .map(|(i, (coefs, k, scale))| {
                let mut hist = vec![0u64; words];
                hist[i / 64] |= 1 << (i % 64);
                Row {
                    coefs,
                    k,
                    hist,
                    origin: Origin::Source(i, scale),
                }
            })
            .collect();
        Ok(Solver {
            vars,
            eps,
            sources,
            rows,
        })
    }

    /// A row that is contradictory on its own, or trivially true.
    fn classify(&self, r: &Row<I>) -> Option<bool> {
        match r.coefs.as_slice() {
            [] => Some(r.k.sign() > 0),
            [(v, _)] if *v == self.eps => {
                if r.k.sign() < 0 {
                    None
                } else {
                    Some(true)
                }
            }
            _ => None,
        }
    }

    fn combine(&mut self, p: usize, n: usize, var: u32) -> Result<usize, Stop> {
        let (rp, rn) = (&self.rows[p], &self.rows[n]);
        let cp = rp.coef(var).expect("positive row").clone();
        let cn = rn.coef(var).expect("negative row").neg().ok_or(Stop::Overflow)?;
        // cn * rp + cp * rn eliminates var
        let mut coefs = Coefs::with_capacity(rp.coefs.len() + rn.coefs.len());
        let (mut i, mut j) = (0, 0);
        while i < rp.coefs.len() || j < rn.coefs.len() {
            let take = match (rp.coefs.get(i), rn.coefs.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, _) => std::cmp::Ordering::Greater,
            };
            match take {
                std::cmp::Ordering::Less => {
                    let (v, c) = &rp.coefs[i];
                    coefs.push((*v, c.mul(&cn).ok_or(Stop::Overflow)?));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (v, c) = &rn.coefs[j];
                    coefs.push((*v, c.mul(&cp).ok_or(Stop::Overflow)?));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = rp.coefs[i].0;
                    let a = rp.coefs[i].1.mul(&cn).ok_or(Stop::Overflow)?;
                    let b = rn.coefs[j].1.mul(&cp).ok_or(Stop::Overflow)?;
                    let c = a.add(&b).ok_or(Stop::Overflow)?;
                    if c.sign() != 0 {
                        coefs.push((v, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let ka = rp.k.mul(&cn).ok_or(Stop::Overflow)?;
        let kb = rn.k.mul(&cp).ok_or(Stop::Overflow)?;
        let mut k = ka.add(&kb).ok_or(Stop::Overflow)?;
        let hist = rp.hist.iter().zip(&rn.hist).map(|(a, b)| a | b).collect();
        let div = normalize(&mut coefs, &mut k);
        self.rows.push(Row {
            coefs,
            k,
            hist,
            origin: Origin::Combo {
                a: p,
                ma: cn,
                b: n,
                mb: cp,
                div,
            },
        });
        Ok(self.rows.len() - 1)
    }

    fn run(&mut self, order: Option<&[u32]>) -> Result<Outcome, Stop> {
        let mut st = State {
            alive: Vec::new(),
            index: FxHashMap::default(),
            occ: vec![Vec::new(); self.vars.len()],
            pos: vec![0; self.vars.len()],
            neg: vec![0; self.vars.len()],
        };
        for r in 0..self.rows.len() {
            match self.classify(&self.rows[r]) {
                Some(true) => return Ok(Outcome::Infeasible(r)),
                Some(false) => continue,
                None => {}
            }
            self.insert(r, &mut st);
        }
        let mut remaining: BTreeSet<u32> = (0..self.vars.len() as u32).collect();
        let mut stages = Vec::new();
        let mut step = 0usize;
        while !remaining.is_empty() {
            step += 1;
            let var = match order {
                Some(o) => o[step - 1],
                None => *remaining
                    .iter()
                    .min_by_key(|&&v| {
                        let (p, n) = (st.pos[v as usize], st.neg[v as usize]);
                        (p * n - p - n, v)
                    })
                    .expect("variables remain"),
            };
            remaining.remove(&var);
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            let mut occ = std::mem::take(&mut st.occ[var as usize]);
            occ.sort_unstable();
            occ.dedup();
            for r in occ {
                if !st.is_alive(r) {
                    continue;
                }
                match self.rows[r].coef(var).map(Int::sign) {
                    Some(s) if s > 0 => pos.push(r),
                    Some(_) => neg.push(r),
                    None => continue,
                }
                self.kill(r, &mut st);
            }
            stages.push((var, pos.iter().chain(&neg).copied().collect()));
            for &p in &pos {
                for &n in &neg {
                    let h: u32 = self.rows[p]
                        .hist
                        .iter()
                        .zip(&self.rows[n].hist)
                        .map(|(a, b)| (a | b).count_ones())
                        .sum();
                    if h as usize > step + 1 {
                        continue;
                    }
                    let r = self.combine(p, n, var)?;
                    if self.rows.len() > ROW_CAP {
                        return Err(Stop::TooBig);
                    }
                    match self.classify(&self.rows[r]) {
                        Some(true) => return Ok(Outcome::Infeasible(r)),
                        Some(false) => {
                            self.rows.truncate(r);
                        }
                        None => self.insert(r, &mut st),
                    }
                }
            }
        }
        Ok(Outcome::Feasible {
            stages,
            finals: (0..self.rows.len()).filter(|&r| st.is_alive(r)).collect(),
        })
    }

    /// Keeps the tightest row per coefficient vector, preferring shorter
    /// histories on ties.
    fn insert(&self, r: usize, st: &mut State<I>) {
        let row = &self.rows[r];
        if let Some(&old) = st.index.get(&row.coefs) {
            let o = &self.rows[old];
            if row.k > o.k || (row.k == o.k && row.hist_len() < o.hist_len()) {
                self.kill(old, st);
            } else {
                return;
            }
        }
        st.index.insert(row.coefs.clone(), r);
        if st.alive.len() <= r {
            st.alive.resize(r + 1, false);
        }
        st.alive[r] = true;
        for (v, c) in &row.coefs {
            if *v == self.eps {
                continue;
            }
            st.occ[*v as usize].push(r);
            if c.sign() > 0 {
                st.pos[*v as usize] += 1;
            } else {
                st.neg[*v as usize] += 1;
            }
        }
    }

    fn kill(&self, r: usize, st: &mut State<I>) {
        let row = &self.rows[r];
        st.alive[r] = false;
        st.index.remove(&row.coefs);
        for (v, c) in &row.coefs {
            if *v == self.eps {
                continue;
            }
            if c.sign() > 0 {
                st.pos[*v as usize] -= 1;
            } else {
                st.neg[*v as usize] -= 1;
            }
        }
    }

    fn certificate(&self, r: usize) -> Certificate {
        let mut weight: BTreeMap<usize, Q> = BTreeMap::new();
        weight.insert(r, Q::one());
        let mut by_source: BTreeMap<usize, Q> = BTreeMap::new();
        while let Some((i, w)) = weight.pop_last() {
            match &self.rows[i].origin {
                Origin::Source(s, scale) => {
                    *by_source.entry(*s).or_insert_with(Q::zero) += w * scale;
                }
                Origin::Combo { a, ma, b, mb, div } => {
                    let d = Q::from_integer(div.to_big());
                    let wa = &w * Q::from_integer(ma.to_big()) / &d;
                    let wb = w * Q::from_integer(mb.to_big()) / d;
                    *weight.entry(*a).or_insert_with(Q::zero) += wa;
                    *weight.entry(*b).or_insert_with(Q::zero) += wb;
                }
            }
        }
        Certificate {
            combination: by_source
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(s, m)| (self.sources[s], m))
                .collect(),
        }
    }

    fn model(&self, stages: &[(u32, Vec<usize>)], finals: &[usize]) -> BTreeMap<Var, Q> {
        let mut values: Vec<Option<Q>> = vec![None; self.vars.len() + 1];
        let mut eps = Q::one();
        for &r in finals {
            let row = &self.rows[r];
            if let Some(a) = row.coef(self.eps) {
                let bound = Q::new(-row.k.to_big(), a.to_big());
                if bound < eps {
                    eps = bound;
                }
            }
        }
        values[self.eps as usize] = Some(eps);
        for (var, rows) in stages.iter().rev() {
            let mut lo = Q::zero();
            let mut hi = Q::one();
            for &r in rows {
                let row = &self.rows[r];
                let mut rest = Q::from_integer(row.k.to_big());
                let mut own = <BigInt as Zero>::zero();
                for (v, c) in &row.coefs {
                    if v == var {
                        own = c.to_big();
                    } else {
                        let x = values[*v as usize].as_ref().expect("later variable fixed");
                        rest += Q::from_integer(c.to_big()) * x;
                    }
                }
                let b = -rest / Q::from_integer(own.clone());
                if own.is_positive() {
                    if b < hi {
                        hi = b;
                    }
                } else if b > lo {
                    lo = b;
                }
            }
            values[*var as usize] = Some((lo + hi) / Q::from_integer(2.into()));
        }
        self.vars
            .iter()
            .zip(values)
            .map(|(v, x)| (*v, x.expect("all variables assigned")))
            .collect()
    }

    fn finish<S: AsIneq>(&self, sys: &[S], outcome: Outcome, want: Want) -> (bool, Option<Feasibility>) {
        match outcome {
            Outcome::Infeasible(r) => {
                if want == Want::Verdict {
                    return (false, None);
                }
                let cert = self.certificate(r);
                assert!(cert.check(sys), "Fourier-Motzkin certificate does not replay");
                (false, Some(Feasibility::Unsat(Refutation::Farkas(cert))))
            }
            Outcome::Feasible { stages, finals } => {
                if want != Want::Full {
                    return (true, None);
                }
                let model = self.model(&stages, &finals);
                assert!(
                    model_satisfies(sys, &model, &BTreeSet::new()),
                    "Fourier-Motzkin model violates the input"
                );
                (true, Some(Feasibility::Sat(model)))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Verdict,
    Certificate,
    Full,
}

fn attempt<I: Int, S: AsIneq>(
    sys: &[S],
    vars: &[Var],
    order: Option<&[Var]>,
    want: Want,
) -> Result<(bool, Option<Feasibility>), Stop> {
    let mut s = Solver::<I>::new(sys, vars.to_vec())?;
    let order_ix: Option<Vec<u32>> = order.map(|o| {
        let mut ix: Vec<u32> = o
            .iter()
            .filter_map(|v| s.vars.iter().position(|w| w == v).map(|i| i as u32))
            .collect();
        for i in 0..s.vars.len() as u32 {
            if !ix.contains(&i) {
                ix.push(i);
            }
        }
        ix
    });
    let outcome = s.run(order_ix.as_deref())?;
    Ok(s.finish(sys, outcome, want))
}

fn decide<S: AsIneq>(sys: &[S], extra: &BTreeSet<Var>, order: Option<&[Var]>, want: Want) -> (bool, Option<Feasibility>) {
    let mut all: BTreeSet<Var> = extra.clone();
    for q in sys {
        all.extend(q.int_row().terms.iter().map(|(v, _)| *v));
    }
    let vars: Vec<Var> = all.into_iter().collect();
    let result = match attempt::<i64, S>(sys, &vars, order, want) {
        Err(Stop::Overflow) => attempt::<BigInt, S>(sys, &vars, order, want),
        r => r,
    };
    match result {
        Ok(r) => r,
        Err(Stop::TooBig) => {
            let f = simplex_feasible(sys, extra);
            match &f {
                Feasibility::Sat(m) => assert!(model_satisfies(sys, m, &BTreeSet::new()), "simplex model violates the input"),
                Feasibility::Unsat(Refutation::Farkas(c)) => assert!(c.check(sys), "simplex certificate does not replay"),
                Feasibility::Unsat(_) => unreachable!("simplex gives Farkas certificates"),
            }
            (f.is_sat(), if want == Want::Verdict { None } else { Some(f) })
        }
        Err(Stop::Overflow) => unreachable!("big integers do not overflow"),
    }
}

/// Decides `sys` together with `0 <= v <= 1` for every variable of `sys`
/// and `vars`. Binary variables are treated as continuous here.
pub fn fm_feasible<S: AsIneq>(sys: &[S], vars: &BTreeSet<Var>) -> Feasibility {
    decide(sys, vars, None, Want::Full).1.expect("outcome requested")
}

/// As [`fm_feasible`] but eliminating in the given order (variables not
/// listed go last, in index order).
pub fn fm_feasible_with_order<S: AsIneq>(sys: &[S], vars: &BTreeSet<Var>, order: &[Var]) -> Feasibility {
    decide(sys, vars, Some(order), Want::Full).1.expect("outcome requested")
}

/// Verdict only, without building a model or certificate.
pub fn fm_is_feasible<S: AsIneq>(sys: &[S]) -> bool {
    decide(sys, &BTreeSet::new(), None, Want::Verdict).0
}

/// A certificate of infeasibility, or `None` when `sys` is feasible (no
/// model is built).
pub fn fm_refute<S: AsIneq>(sys: &[S]) -> Option<Certificate> {
    match decide(sys, &BTreeSet::new(), None, Want::Certificate).1 {
        Some(Feasibility::Unsat(Refutation::Farkas(c))) => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{AffineExpr, LinIneq};
    use crate::semantics::q;

    fn c(n: i64, d: i64) -> AffineExpr {
        AffineExpr::constant(q(n, d))
    }

    fn x(i: u32) -> Var {
        Var::Param(i)
    }

    #[test]
    fn contradictory_bounds() {
        let sys = vec![LinIneq::le(x(0), c(1, 2)), LinIneq::ge(x(0), c(3, 4))];
        match fm_feasible(&sys, &BTreeSet::new()) {
            Feasibility::Unsat(Refutation::Farkas(cert)) => assert!(cert.check(&sys)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_upper_bound_is_satisfiable() {
        let sys = vec![LinIneq::lt(x(0), c(1, 1))];
        match fm_feasible(&sys, &BTreeSet::new()) {
            Feasibility::Sat(m) => assert!(m[&x(0)] < q(1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sum_bound() {
        let sys = vec![
            LinIneq::le(AffineExpr::var(x(0)) + AffineExpr::var(x(1)), c(1, 1)),
            LinIneq::ge(x(0), c(2, 3)),
            LinIneq::ge(x(1), c(2, 3)),
        ];
        assert!(!fm_feasible(&sys, &BTreeSet::new()).is_sat());
    }

    #[test]
    fn strictness_matters() {
        let le = vec![LinIneq::le(x(0), c(1, 2)), LinIneq::ge(x(0), c(1, 2))];
        assert!(fm_feasible(&le, &BTreeSet::new()).is_sat());
        let lt = vec![LinIneq::lt(x(0), c(1, 2)), LinIneq::ge(x(0), c(1, 2))];
        match fm_feasible(&lt, &BTreeSet::new()) {
            Feasibility::Unsat(Refutation::Farkas(cert)) => {
                assert_eq!(cert.replay(&lt), Some((q(0, 1), super::super::Rel::Lt)));
            }
            other => panic!("{other:?}"),
        }
        // x > 1 clashes with the implicit upper bound
        assert!(!fm_feasible(&[LinIneq::gt(x(0), c(1, 1))], &BTreeSet::new()).is_sat());
    }

    #[test]
    fn empty_system_and_free_variables() {
        assert_eq!(fm_feasible::<LinIneq>(&[], &BTreeSet::new()), Feasibility::Sat(BTreeMap::new()));
        let vars: BTreeSet<Var> = [x(3)].into_iter().collect();
        match fm_feasible::<LinIneq>(&[], &vars) {
            Feasibility::Sat(m) => assert_eq!(m[&x(3)], q(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_rows() {
        assert!(fm_feasible(&[LinIneq::le(c(0, 1), c(1, 2))], &BTreeSet::new()).is_sat());
        assert!(!fm_feasible(&[LinIneq::lt(c(1, 2), c(1, 2))], &BTreeSet::new()).is_sat());
    }

    // Eliminating x multiplies coefficients near 2^40, which overflows i64.
    #[test]
    fn wide_coefficients_fall_back_to_bigint() {
        let big = 1i64 << 40;
        let v = |i: u32, k: i64| AffineExpr::var(x(i)).scale(&q(k, 1));
        let mut sys = vec![
            LinIneq::le(v(0, big + 1), v(1, big)),
            LinIneq::ge(v(0, big - 1), v(2, big)),
            LinIneq::le(x(1), x(2)),
        ];
        match fm_feasible(&sys, &BTreeSet::new()) {
            Feasibility::Sat(m) => assert!(model_satisfies(&sys, &m, &BTreeSet::new())),
            other => panic!("{other:?}"),
        }
        sys.push(LinIneq::gt(x(2), c(0, 1)));
        match fm_feasible(&sys, &BTreeSet::new()) {
            Feasibility::Unsat(Refutation::Farkas(cert)) => assert!(cert.check(&sys)),
            other => panic!("{other:?}"),
        }
    }
}
