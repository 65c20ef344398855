//! Growth constants and the inequality verification suite.
//!
//! Real quantities are carried as a value plus an accumulated absolute
//! error bound. Integer comparisons in the suite are exact; a real
//! comparison only passes when it holds with margin exceeding the tracked
//! error. Budget-exhausted counts mark their instances "skipped", never
//! "fail".

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::enumerate::{
    count_a, count_b, count_p_histogram, SearchConfig,
};
use crate::error::{Error, Result};
use crate::series::{binomial, macmahon_numbers, vector_partition_table, TruncatedSeries};

/// A real number together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub abs_err: f64,
}

const ULP_SLOP: f64 = 4.0 * f64::EPSILON;

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx { value, abs_err: 0.0 }
    }

    /// A constant evaluated in double precision: off by a couple of ulps.
    pub fn rounded(value: f64) -> Self {
        Approx { value, abs_err: value.abs() * 2.0 * f64::EPSILON }
    }

    pub fn with_err(value: f64, abs_err: f64) -> Self {
        Approx { value, abs_err }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.abs_err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.abs_err
    }

    fn slop(value: f64) -> f64 {
        value.abs() * ULP_SLOP
    }

    pub fn add(self, o: Approx) -> Approx {
        let value = self.value + o.value;
        Approx { value, abs_err: self.abs_err + o.abs_err + Self::slop(value) }
    }

    pub fn sub(self, o: Approx) -> Approx {
        let value = self.value - o.value;
        Approx { value, abs_err: self.abs_err + o.abs_err + Self::slop(value) }
    }

    pub fn mul(self, o: Approx) -> Approx {
        let value = self.value * o.value;
        let abs_err = self.value.abs() * o.abs_err
            + o.value.abs() * self.abs_err
            + self.abs_err * o.abs_err
            + Self::slop(value);
        Approx { value, abs_err }
    }

    pub fn div(self, o: Approx) -> Approx {
        let denom_lo = o.value.abs() - o.abs_err;
        assert!(denom_lo > 0.0, "division by an interval containing zero");
        let value = self.value / o.value;
        let abs_err =
            (self.abs_err + value.abs() * o.abs_err) / denom_lo + Self::slop(value);
        Approx { value, abs_err }
    }

    /// `x^p` for `x > 0` (p is treated as exact).
    pub fn powf(self, p: f64) -> Approx {
        let x_lo = self.value - self.abs_err;
        assert!(x_lo > 0.0, "powf needs a strictly positive base interval");
        let value = self.value.powf(p);
        // |d/dx x^p| = |p| x^{p-1}, maximized at an end of the interval
        let x_hi = self.value + self.abs_err;
        let deriv = p.abs() * (x_lo.powf(p - 1.0)).max(x_hi.powf(p - 1.0));
        Approx { value, abs_err: deriv * self.abs_err + Self::slop(value) }
    }

    pub fn ln(self) -> Approx {
        let x_lo = self.value - self.abs_err;
        assert!(x_lo > 0.0, "ln needs a strictly positive interval");
        let value = self.value.ln();
        Approx { value, abs_err: self.abs_err / x_lo + Self::slop(value.max(1.0)) }
    }
}

/// Riemann zeta at an integer `s >= 2`, as a partial sum plus an integral
/// bracket for the tail, guaranteed within `abs_tol`.
pub fn zeta(s: u32, abs_tol: f64) -> Result<Approx> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta({s}) is outside the convergent range s >= 2"
        )));
    }
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument("zeta tolerance must be positive".into()));
    }
    let exp = -(s as i32);
    let mut terms = 1u64 << 10;
    loop {
        // compensated summation, small terms first
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for n in (1..=terms).rev() {
            let term = (n as f64).powi(exp) - carry;
            let t = sum + term;
            carry = (t - sum) - term;
            sum = t;
        }
        let m = terms as f64;
        let tail_hi = m.powi(1 - s as i32) / (s as f64 - 1.0);
        let tail_lo = (m + 1.0).powi(1 - s as i32) / (s as f64 - 1.0);
        let value = sum + 0.5 * (tail_hi + tail_lo);
        let fp_err = 8.0 * f64::EPSILON * sum;
        let abs_err = 0.5 * (tail_hi - tail_lo) + fp_err;
        if abs_err <= abs_tol {
            return Ok(Approx { value, abs_err });
        }
        if terms >= 1 << 26 {
            return Err(Error::InvalidArgument(format!(
                "cannot reach zeta tolerance {abs_tol:e}; best error {abs_err:e}"
            )));
        }
        terms <<= 1;
    }
}

/// Natural log of a positive big integer, via exponent extraction plus a
/// mantissa logarithm.
pub fn ln_biguint(x: &BigUint) -> Result<Approx> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("ln of zero".into()));
    }
    let bits = x.bits();
    if bits <= 53 {
        let v = x.to_u64().expect("fits") as f64;
        return Ok(Approx::rounded(v.ln()));
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().expect("53 bits fit");
    // top * 2^shift <= x < (top + 1) * 2^shift
    let spread = ((top + 1) as f64 / top as f64).ln();
    let value = (top as f64).ln() + shift as f64 * std::f64::consts::LN_2 + 0.5 * spread;
    let abs_err = 0.5 * spread + (shift as f64 + 4.0) * f64::EPSILON * value.abs().max(1.0);
    Ok(Approx { value, abs_err })
}

/// The growth constants for one dimension, each with a tracked error
/// bound of at most 1e-9.
#[derive(Clone, Debug)]
pub struct ConstantSet {
    pub d: u32,
    pub zeta_value: Approx,
    pub beta: Approx,
    pub gamma: Approx,
    pub delta_lower: Approx,
    pub alpha: Approx,
}

impl ConstantSet {
    pub fn to_json(&self) -> Value {
        let error_bound = [
            self.zeta_value.abs_err,
            self.beta.abs_err,
            self.gamma.abs_err,
            self.delta_lower.abs_err,
            self.alpha.abs_err,
        ]
        .into_iter()
        .fold(0.0f64, f64::max);
        json!({
            "d": self.d,
            "zeta": self.zeta_value.value,
            "beta": self.beta.value,
            "gamma": self.gamma.value,
            "delta_lower": self.delta_lower.value,
            "alpha": self.alpha.value,
            "error_bound": error_bound,
        })
    }
}

/// Evaluates, for dimension `d >= 1`:
/// beta  = (d+1) zeta(d+1)^{1/(d+1)}
/// gamma = d^{-d/(d+1)} (d+1) zeta(d+1)^{1/(d+1)}
/// delta_lower = log 2 + 3^{-d} log(3/2)
/// alpha = (d+1) / ((d+1)!)^{1/(d+1)} * delta_lower
pub fn constants(d: u32) -> Result<ConstantSet> {
    if d < 1 {
        return Err(Error::InvalidArgument("constants need dimension >= 1".into()));
    }
    let s = d + 1;
    let inv_s = 1.0 / f64::from(s);
    let zeta_value = zeta(s, 1e-12)?;
    let beta = Approx::exact(f64::from(s)).mul(zeta_value.powf(inv_s));
    let gamma = Approx::exact(f64::from(d))
        .powf(-f64::from(d) * inv_s)
        .mul(beta);
    let pow3 = Approx::rounded(3.0f64.powi(d as i32));
    let delta_lower = Approx::rounded(std::f64::consts::LN_2)
        .add(Approx::rounded(1.5f64.ln()).div(pow3));
    let mut factorial = Approx::exact(1.0);
    for i in 2..=s {
        factorial = factorial.mul(Approx::exact(f64::from(i)));
    }
    let alpha = Approx::exact(f64::from(s))
        .div(factorial.powf(inv_s))
        .mul(delta_lower);
    Ok(ConstantSet { d, zeta_value, beta, gamma, delta_lower, alpha })
}

/// The finite-k ratio `log a_d(k) / (k^d / d!)` whose liminf the lower
/// bound constant comes from.
pub fn delta_empirical(d: u32, k: u32, config: &SearchConfig) -> Result<Approx> {
    if d < 1 {
        return Err(Error::InvalidArgument("delta_empirical needs dimension >= 1".into()));
    }
    if k < 1 {
        return Err(Error::InvalidArgument("delta_empirical needs k >= 1".into()));
    }
    let a = count_a(d as usize, k, config)?;
    let log_a = ln_biguint(&a)?;
    let mut denom = Approx::exact(f64::from(k));
    let mut power = Approx::exact(1.0);
    for _ in 0..d {
        power = power.mul(denom);
    }
    denom = power;
    for i in 2..=d {
        denom = denom.div(Approx::exact(f64::from(i)));
    }
    Ok(log_a.div(denom))
}

/// One row of the lower-bound-vs-MacMahon comparison.
#[derive(Clone, Debug)]
pub struct CrossingRow {
    pub d: u32,
    pub alpha: Approx,
    pub gamma: Approx,
    pub alpha_gt_gamma: bool,
}

/// alpha vs gamma for d = 1..=d_max. The predicate is decided with margin
/// over the tracked errors; an undecidable comparison is an error rather
/// than a guess.
pub fn crossing_table(d_max: u32) -> Result<Vec<CrossingRow>> {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let c = constants(d)?;
        let alpha_gt_gamma = if c.alpha.lo() > c.gamma.hi() {
            true
        } else if c.alpha.hi() < c.gamma.lo() {
            false
        } else {
            return Err(Error::InvalidArgument(format!(
                "alpha and gamma are too close to separate at d = {d}"
            )));
        };
        rows.push(CrossingRow { d, alpha: c.alpha, gamma: c.gamma, alpha_gt_gamma });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn as_str(&self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
        }
    }
}

#[derive(Clone, Debug)]
pub enum BoundValue {
    Int(BigInt),
    Real(Approx),
}

impl BoundValue {
    fn to_json(&self) -> Value {
        match self {
            BoundValue::Int(v) => Value::String(v.to_string()),
            BoundValue::Real(a) => json!(a.value),
        }
    }
}

/// One checked inequality instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub params: Value,
    pub lhs: Option<BoundValue>,
    pub rhs: Option<BoundValue>,
    pub relation: Relation,
    pub verdict: Verdict,
    pub error_bound: f64,
    sort_key: Vec<u64>,
}

impl Instance {
    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.name,
            "params": self.params,
            "lhs": self.lhs.as_ref().map(|v| v.to_json()).unwrap_or(Value::Null),
            "rhs": self.rhs.as_ref().map(|v| v.to_json()).unwrap_or(Value::Null),
            "relation": self.relation.as_str(),
            "verdict": self.verdict.as_str(),
            "error_bound": self.error_bound,
        })
    }
}

/// The full inequality report for one dimension.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub d: u32,
    pub n_max: u64,
    pub k_max: u32,
    pub constants: ConstantSet,
    pub instances: Vec<Instance>,
}

impl BoundsReport {
    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict == Verdict::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict == Verdict::Fail).count()
    }

    pub fn skipped(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict == Verdict::Skipped).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "n_max": self.n_max,
            "k_max": self.k_max,
            "constants": self.constants.to_json(),
            "passed": self.passed(),
            "failed": self.failed(),
            "skipped": self.skipped(),
            "instances": self.instances.iter().map(|i| i.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn int(v: &BigUint) -> BoundValue {
    BoundValue::Int(BigInt::from(v.clone()))
}

struct SuiteBuilder {
    instances: Vec<Instance>,
}

impl SuiteBuilder {
    fn push_int(
        &mut self,
        name: &str,
        params: Value,
        sort_key: Vec<u64>,
        relation: Relation,
        lhs: Option<&BigUint>,
        rhs: Option<BigUint>,
    ) {
        match (lhs, rhs) {
            (Some(l), Some(r)) => {
                let holds = match relation {
                    Relation::Le => *l <= r,
                    Relation::Ge => *l >= r,
                    Relation::Eq => *l == r,
                };
                self.instances.push(Instance {
                    name: name.into(),
                    params,
                    lhs: Some(int(l)),
                    rhs: Some(int(&r)),
                    relation,
                    verdict: if holds { Verdict::Pass } else { Verdict::Fail },
                    error_bound: 0.0,
                    sort_key,
                });
            }
            _ => self.instances.push(Instance {
                name: name.into(),
                params,
                lhs: None,
                rhs: None,
                relation,
                verdict: Verdict::Skipped,
                error_bound: 0.0,
                sort_key,
            }),
        }
    }

    fn push_real_le(
        &mut self,
        name: &str,
        params: Value,
        sort_key: Vec<u64>,
        lhs: Approx,
        rhs: Approx,
    ) {
        let holds = lhs.hi() <= rhs.lo();
        self.instances.push(Instance {
            name: name.into(),
            params,
            lhs: Some(BoundValue::Real(lhs)),
            rhs: Some(BoundValue::Real(rhs)),
            relation: Relation::Le,
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            error_bound: lhs.abs_err + rhs.abs_err,
            sort_key,
        });
    }
}

/// Largest `t` with `t^r <= x`.
fn floor_root(x: u128, r: u32) -> u64 {
    let mut lo = 0u64;
    let mut hi = 2u64;
    while pow_le(hi, r, x) {
        hi *= 2;
    }
    // invariant: lo^r <= x < hi^r
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pow_le(mid, r, x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn pow_le(t: u64, r: u32, x: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..r {
        acc = match acc.checked_mul(t as u128) {
            Some(v) => v,
            None => return false,
        };
        if acc > x {
            return false;
        }
    }
    acc <= x
}

/// Runs every inequality instance of the suite for one dimension.
///
/// Instance families, all evaluated in exact integer arithmetic unless
/// noted:
/// 1. `thmc`: p_d(n) <= n^d p(n,...,n)
/// 2. `lempp`: ptilde_d(n) <= ptilde(n,...,n)
/// 3. `ch-cumulative`: ptilde_d(n) <= mtilde_d(dn-d+1);
///    `ch-pointwise`: p_d(n) <= (dn-d+1) m_d(dn-d+1)
/// 4. `lembv` (real, with margin): log p(n_1..n_d) <=
///    (d+1) zeta(d+1)^{1/(d+1)} (n_1...n_d)^{1/(d+1)}
/// 5. `a-ge-b`, `lemlb`, `lemlb-weak`, `aup-rec`, `aup-closed`, `lempa`
/// 6. `macmahon-defect`: m_d(6) - p_d(6) == C(d,3) + C(d,4)
pub fn verify_suite(
    d: u32,
    n_max: u64,
    k_max: u32,
    config: &SearchConfig,
) -> Result<BoundsReport> {
    if d < 1 {
        return Err(Error::InvalidArgument("verify_suite needs dimension >= 1".into()));
    }
    let constants_set = constants(d)?;
    let dim = d as usize;
    let du = u64::from(d);

    // shared exact ingredients; a budget failure turns into None and the
    // dependent instances get skipped
    let skippable = |r: Result<BigUint>| -> Result<Option<BigUint>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };

    let n_need = n_max.max(6);
    let p_hist: Option<Vec<BigUint>> = match count_p_histogram(dim, n_need, config) {
        Ok(h) => Some(h),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let p_at = |n: u64| -> Option<&BigUint> { p_hist.as_ref().map(|h| &h[n as usize]) };
    let ptilde_at = |n: u64| -> Option<BigUint> {
        p_hist.as_ref().map(|h| h[..=n as usize].iter().sum())
    };

    let mut a_memo: HashMap<(u32, u32), Option<BigUint>> = HashMap::new();
    macro_rules! a_of {
        ($dd:expr, $kk:expr) => {{
            let key = ($dd, $kk);
            if !a_memo.contains_key(&key) {
                let v = skippable(count_a($dd as usize, $kk, config))?;
                a_memo.insert(key, v);
            }
            a_memo.get(&key).unwrap().clone()
        }};
    }

    let table = vector_partition_table(dim, &vec![n_max; dim])?;
    let ttable = table.tilde();
    let mac_order = (du * n_max).saturating_sub(du) + 1;
    let mac: TruncatedSeries = macmahon_numbers(d, mac_order.max(6));
    let mtilde = mac.tilde();

    let mut b = SuiteBuilder { instances: Vec::new() };

    // (1) and (2) and (3)
    for n in 1..=n_max {
        let diag = table.get(&vec![n; dim]);
        let n_pow_d = BigUint::from(n).pow(d);
        b.push_int(
            "thmc",
            json!({"d": d, "n": n}),
            vec![1, n],
            Relation::Le,
            p_at(n),
            Some(n_pow_d * diag),
        );
        b.push_int(
            "lempp",
            json!({"d": d, "n": n}),
            vec![2, n],
            Relation::Le,
            ptilde_at(n).as_ref(),
            Some(ttable.get(&vec![n; dim]).clone()),
        );
        let m_index = du * n - du + 1;
        b.push_int(
            "ch-cumulative",
            json!({"d": d, "n": n}),
            vec![3, n],
            Relation::Le,
            ptilde_at(n).as_ref(),
            Some(mtilde.coeff(m_index).clone()),
        );
        b.push_int(
            "ch-pointwise",
            json!({"d": d, "n": n}),
            vec![4, n],
            Relation::Le,
            p_at(n),
            Some(BigUint::from(m_index) * mac.coeff(m_index)),
        );
    }

    // (4) real-valued upper bound on the full table, positive indices
    for index in table.indices() {
        if index.iter().any(|&x| x == 0) {
            continue;
        }
        let value = table.get(&index);
        let lhs = ln_biguint(value)?;
        let product: u64 = index.iter().product();
        let rhs = constants_set
            .beta
            .mul(Approx::exact(product as f64).powf(1.0 / f64::from(d + 1)));
        let mut key = vec![5];
        key.extend(&index);
        b.push_real_le("lembv", json!({"d": d, "index": index}), key, lhs, rhs);
    }

    // (5) simplex families
    for k in 1..=k_max {
        let a_k = a_of!(d, k);
        let b_k = skippable(count_b(dim, k, config))?;
        b.push_int(
            "a-ge-b",
            json!({"d": d, "k": k}),
            vec![6, u64::from(k)],
            Relation::Ge,
            a_k.as_ref(),
            b_k.clone(),
        );
        // closed-form bounds are only materialized when the matching count
        // was actually computed, and only at digestible sizes
        let lemlb_rhs = if b_k.is_some() {
            match binomial(u64::from((k - 1) / 3), du).to_u32() {
                Some(0) => Some(BigUint::one()),
                Some(e) if d <= 12 => {
                    let base = BigUint::from(3u32) << (3u64.pow(d) - 1) as usize;
                    Some(base.pow(e))
                }
                _ => None,
            }
        } else {
            None
        };
        b.push_int(
            "lemlb",
            json!({"d": d, "k": k}),
            vec![7, u64::from(k)],
            Relation::Ge,
            b_k.as_ref(),
            lemlb_rhs,
        );
        let pow2 = |e: &BigUint| -> Option<BigUint> {
            e.to_u64().filter(|&e| e <= 10_000_000).map(|e| BigUint::one() << (e as usize))
        };
        let weak_rhs = if b_k.is_some() {
            pow2(&binomial(u64::from(k) - 1, du))
        } else {
            None
        };
        b.push_int(
            "lemlb-weak",
            json!({"d": d, "k": k}),
            vec![8, u64::from(k)],
            Relation::Ge,
            b_k.as_ref(),
            weak_rhs,
        );
        let closed_rhs = if a_k.is_some() {
            pow2(&(binomial(u64::from(k) - 1, du) * 2u32))
        } else {
            None
        };
        b.push_int(
            "aup-closed",
            json!({"d": d, "k": k}),
            vec![9, u64::from(k)],
            Relation::Le,
            a_k.as_ref(),
            closed_rhs,
        );
        if k >= d {
            let mut product = Some(BigUint::one());
            for j in d..k {
                product = match (product, a_of!(d - 1, j)) {
                    (Some(p), Some(f)) => Some(p * f),
                    _ => None,
                };
            }
            b.push_int(
                "aup-rec",
                json!({"d": d, "k": k}),
                vec![10, u64::from(k)],
                Relation::Le,
                a_k.as_ref(),
                product,
            );
        }
    }

    // (5) lempa: ptilde_d(n) >= a_d(k) at k = floor(((d+1)! n)^{1/(d+1)})
    if d <= 30 {
        let mut factorial: u128 = 1;
        for i in 2..=u128::from(d) + 1 {
            factorial *= i;
        }
        for n in 1..=n_max {
            let k = floor_root(factorial * u128::from(n), d + 1) as u32;
            let a_k = a_of!(d, k);
            b.push_int(
                "lempa",
                json!({"d": d, "n": n, "k": k}),
                vec![11, n],
                Relation::Ge,
                ptilde_at(n).as_ref(),
                a_k,
            );
        }
    }

    // (6) the MacMahon defect identity at n = 6
    let defect = p_at(6).map(|p6| {
        let m6 = mac.coeff(6);
        (BigInt::from(m6.clone()) - BigInt::from(p6.clone()))
            .to_biguint()
            .unwrap_or_default()
    });
    b.push_int(
        "macmahon-defect",
        json!({"d": d, "n": 6}),
        vec![12],
        Relation::Eq,
        defect.as_ref(),
        Some(binomial(du, 3) + binomial(du, 4)),
    );

    let mut instances = b.instances;
    instances.sort_by(|x, y| x.name.cmp(&y.name).then(x.sort_key.cmp(&y.sort_key)));
    Ok(BoundsReport { d, n_max, k_max, constants: constants_set, instances })
}
