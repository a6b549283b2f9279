//! Closed-form closeness and residual closeness of Harary graphs, with
//! provenance traces.
//!
//! Every function here is O(1)-ish and pure: diameters come from the
//! closed-form layer in [`crate::distance`], never from BFS. Parameter
//! regions with no printed formula come back as
//! [`FormulaResult::NotCoveredByPaper`] — a first-class answer, not an
//! error — and the differential harness in [`crate::verify`] checks every
//! covered region against the brute-force oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distance::{even_k_diameter, harary_diameter};
use crate::graph::{HararyParams, ParityCase};
use crate::{Error, Result};

/// Exact `2^{-e}` (powers of two are exact in f64 down to the subnormal
/// range, far past any supported diameter).
pub(crate) fn inv_pow2(e: u32) -> f64 {
    0.5f64.powi(e as i32)
}

/// Partial sum `sum_{i=2}^{h} (i-1)/2^i = 1 - (h+1) 2^{-h}` (0 for `h < 2`).
///
/// This is the quantity every residual-closeness branch calls `D_0`/`D_v`
/// in some scaling: the total closeness change caused by the pairs a vertex
/// removal stretches.
pub fn tail_sum(h: u32) -> f64 {
    if h < 2 {
        0.0
    } else {
        1.0 - (f64::from(h) + 1.0) * inv_pow2(h)
    }
}

/// Whether a closed form exists for the queried parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coverage {
    Covered,
    NotCoveredByPaper,
}

/// Parity of an inner diameter consulted by a dispatch branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: u32) -> Self {
        if value.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A residue together with the modulus that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    pub value: usize,
    pub modulus: usize,
}

/// Which quantities a fired branch actually consumed.
///
/// `theorem_id` names exactly one theorem/corollary/remark case; the other
/// fields are populated only when the branch used them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaTrace {
    pub theorem_id: String,
    pub t: Option<Residue>,
    pub diam: Option<u32>,
    pub inner_diam_parity: Option<Parity>,
    /// Theorem 2.8 intermediate `A = (diam-2)(k-1)`.
    pub a: Option<f64>,
    /// Theorem 2.8 intermediate `B = 1 - 2^{-(diam-2)}`.
    pub b: Option<f64>,
    /// Residual change term `D_v` where the fired branch defines one.
    pub d_v: Option<f64>,
}

impl FormulaTrace {
    pub fn new(theorem_id: &str) -> Self {
        Self {
            theorem_id: theorem_id.to_owned(),
            t: None,
            diam: None,
            inner_diam_parity: None,
            a: None,
            b: None,
            d_v: None,
        }
    }

    pub fn with_t(mut self, value: usize, modulus: usize) -> Self {
        self.t = Some(Residue { value, modulus });
        self
    }

    pub fn with_diam(mut self, diam: u32) -> Self {
        self.diam = Some(diam);
        self
    }

    pub fn with_inner_diam_parity(mut self, parity: Parity) -> Self {
        self.inner_diam_parity = Some(parity);
        self
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: f64) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_d_v(mut self, d_v: f64) -> Self {
        self.d_v = Some(d_v);
        self
    }
}

/// A closed-form value plus its trace, or an honest statement that the
/// printed formulas do not reach the queried parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FormulaResult {
    Covered { value: f64, trace: FormulaTrace },
    NotCoveredByPaper,
}

impl FormulaResult {
    pub(crate) fn covered(value: f64, trace: FormulaTrace) -> Self {
        FormulaResult::Covered { value, trace }
    }

    pub fn coverage(&self) -> Coverage {
        match self {
            FormulaResult::Covered { .. } => Coverage::Covered,
            FormulaResult::NotCoveredByPaper => Coverage::NotCoveredByPaper,
        }
    }

    pub fn is_covered(&self) -> bool {
        matches!(self, FormulaResult::Covered { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            FormulaResult::Covered { value, .. } => Some(*value),
            FormulaResult::NotCoveredByPaper => None,
        }
    }

    pub fn trace(&self) -> Option<&FormulaTrace> {
        match self {
            FormulaResult::Covered { trace, .. } => Some(trace),
            FormulaResult::NotCoveredByPaper => None,
        }
    }
}

/// Named residue rules used by the dispatch branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueRule {
    /// `(n-1) mod k` — even-k closeness (Theorem 2.1 and the circulant
    /// corollary with `k = 2l`).
    EvenK,
    /// `n mod (k-1)` — odd-k even-n closeness (Theorems 2.3-2.5).
    OddKEvenN,
    /// `(n-k-1) mod 2(k-1)` — odd-odd closeness and residual
    /// (Theorems 2.8 and 3.5) and the odd-odd diameter lift.
    OddKOddN,
    /// `(n-4) mod 4` — the k=3 odd-n residual corollary.
    K3Odd,
}

impl ResidueRule {
    fn name(self) -> &'static str {
        match self {
            ResidueRule::EvenK => "EvenK",
            ResidueRule::OddKEvenN => "OddKEvenN",
            ResidueRule::OddKOddN => "OddKOddN",
            ResidueRule::K3Odd => "K3Odd",
        }
    }
}

impl fmt::Display for ResidueRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The residue each dispatch family branches on. Errors if the rule does
/// not apply to the parameters' parities.
pub fn residue_t(params: HararyParams, rule: ResidueRule) -> Result<usize> {
    let (k, n) = (params.k(), params.n());
    let mismatch = || Error::ResidueRuleMismatch {
        rule: rule.name(),
        k,
        n,
    };
    match rule {
        ResidueRule::EvenK => {
            if k % 2 != 0 {
                return Err(mismatch());
            }
            Ok((n - 1) % k)
        }
        ResidueRule::OddKEvenN => {
            if k % 2 == 0 || n % 2 != 0 {
                return Err(mismatch());
            }
            Ok(n % (k - 1))
        }
        ResidueRule::OddKOddN => {
            if k % 2 == 0 || n % 2 == 0 {
                return Err(mismatch());
            }
            Ok((n - k - 1) % (2 * (k - 1)))
        }
        ResidueRule::K3Odd => {
            if k != 3 || n % 2 == 0 {
                return Err(mismatch());
            }
            Ok((n - 4) % 4)
        }
    }
}

/// The three closeness classes of the odd-odd case: the degree-(k+1) vertex
/// `(n-1)/2`, the ring groups flanking it, and the remaining `RM` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexClass {
    Apex,
    /// Group `j`, `0 <= j <= diam-3`: vertices `(n-1)/2 ± ((k-1)/2·j + i)`
    /// for `1 <= i <= (k-1)/2`.
    RingGroup(usize),
    Rm,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Apex => f.write_str("Apex"),
            VertexClass::RingGroup(j) => write!(f, "RingGroup({j})"),
            VertexClass::Rm => f.write_str("RM"),
        }
    }
}

fn odd_odd_context(params: HararyParams) -> Result<(usize, usize, usize, u32)> {
    let (k, n) = (params.k(), params.n());
    if params.parity_case() != ParityCase::OddKOddN {
        return Err(Error::InvalidVertexClass {
            k,
            n,
            reason: "requires odd k and odd n".to_owned(),
        });
    }
    let diam = harary_diameter(params).expect("odd k >= 3 always has a closed-form diameter");
    if diam <= 2 {
        return Err(Error::InvalidVertexClass {
            k,
            n,
            reason: format!("requires diameter > 2, got {diam}"),
        });
    }
    let t = (n - k - 1) % (2 * (k - 1));
    Ok((k, n, t, diam))
}

fn apex_value(k: usize, t: usize, diam: u32) -> f64 {
    let kf = k as f64;
    (kf + 1.0) / 2.0
        + (kf - 1.0) * (1.0 - inv_pow2(diam - 2))
        + (t as f64 - 1.0) * inv_pow2(diam)
}

fn rm_value(k: usize, t: usize, diam: u32) -> f64 {
    let kf = k as f64;
    kf / 2.0 + (kf - 1.0) * (1.0 - inv_pow2(diam - 2)) + t as f64 * inv_pow2(diam)
}

/// Cumulative deficit of ring group `j` below the apex:
/// `sum_{m=1}^{j+1} (2^{-m} - 2^{-(m+1)})`, summed literally.
fn ring_deficit(j: usize) -> f64 {
    let mut s = 0.0;
    for m in 1..=(j as u32 + 1) {
        s += inv_pow2(m) - inv_pow2(m + 1);
    }
    s
}

/// Per-vertex closed-form closeness in the odd-odd case (the Thm2.8
/// apex/ring/RM values). Requires odd k, odd n, diameter > 2, and for ring
/// groups `j <= diam - 3`.
pub fn vertex_closeness_formula_odd_odd(params: HararyParams, class: VertexClass) -> Result<f64> {
    let (k, n, t, diam) = odd_odd_context(params)?;
    match class {
        VertexClass::Apex => Ok(apex_value(k, t, diam)),
        VertexClass::Rm => Ok(rm_value(k, t, diam)),
        VertexClass::RingGroup(j) => {
            if j > diam as usize - 3 {
                return Err(Error::InvalidVertexClass {
                    k,
                    n,
                    reason: format!("ring group {j} exceeds diam-3 = {}", diam - 3),
                });
            }
            Ok(apex_value(k, t, diam) - ring_deficit(j))
        }
    }
}

/// The class of every vertex in the odd-odd case: index `v` holds the class
/// of vertex `v`. The classes partition the vertex set:
/// `1 + (k-1)(diam-2) + |RM| = n`.
pub fn vertex_classes(params: HararyParams) -> Result<Vec<VertexClass>> {
    let (k, n, _, diam) = odd_odd_context(params)?;
    let mid = (n - 1) / 2;
    let half = (k - 1) / 2;
    let mut classes = vec![VertexClass::Rm; n];
    classes[mid] = VertexClass::Apex;
    for j in 0..=(diam as usize - 3) {
        for i in 1..=half {
            let offset = half * j + i;
            debug_assert!(offset <= mid, "ring groups never wrap around the circle");
            classes[mid - offset] = VertexClass::RingGroup(j);
            classes[mid + offset] = VertexClass::RingGroup(j);
        }
    }
    debug_assert_eq!(
        classes.iter().filter(|c| **c == VertexClass::Rm).count(),
        n - (k - 1) * (diam as usize - 2) - 1
    );
    Ok(classes)
}

/// Theorem 2.1's value for even k (shared verbatim by the circulant
/// corollary with `k = 2l`).
fn even_k_closeness_value(k: usize, n: usize, t: usize, diam: u32) -> f64 {
    let (kf, nf) = (k as f64, n as f64);
    if t != 0 {
        nf * (kf + inv_pow2(diam) * (t as f64 - 2.0 * kf))
    } else {
        nf * (kf - inv_pow2(diam) * kf)
    }
}

/// Closed-form graph closeness `C(H_{k,n})`.
///
/// Dispatch: even k — Theorem 2.1; odd k, even n — Theorem 2.2 (diam <= 2),
/// Corollary 2.6 (k = 3), Theorems 2.3/2.4/2.5 by `n mod (k-1)`; odd k,
/// odd n — Theorem 2.7 (diam <= 2) or Theorem 2.8. `k = 2` is not covered.
///
/// The Thm2.8 value is assembled from its per-class values (apex, then
/// ring groups in ascending order, then the RM block) so the class
/// reconstruction identity holds bitwise; see
/// [`vertex_closeness_formula_odd_odd`].
pub fn closeness_formula(params: HararyParams) -> FormulaResult {
    let (k, n) = (params.k(), params.n());
    if k == 2 {
        return FormulaResult::NotCoveredByPaper;
    }
    let diam = harary_diameter(params).expect("k >= 3 always has a closed-form diameter");
    let (kf, nf, diamf) = (k as f64, n as f64, f64::from(diam));

    match params.parity_case() {
        ParityCase::EvenK => {
            let t = (n - 1) % k;
            let id = if t != 0 { "Thm2.1-t" } else { "Thm2.1-t0" };
            FormulaResult::covered(
                even_k_closeness_value(k, n, t, diam),
                FormulaTrace::new(id).with_t(t, k).with_diam(diam),
            )
        }
        ParityCase::OddKEvenN => {
            if diam == 1 {
                return FormulaResult::covered(
                    nf * (nf - 1.0) / 2.0,
                    FormulaTrace::new("Thm2.2-diam1").with_diam(diam),
                );
            }
            if diam == 2 {
                return FormulaResult::covered(
                    nf * (kf / 2.0 + (nf - kf - 1.0) / 4.0),
                    FormulaTrace::new("Thm2.2-diam2").with_diam(diam),
                );
            }
            if k == 3 {
                let inner = even_k_diameter(2, n);
                let (value, id) = if inner % 2 == 1 {
                    (7.0 * nf / 2.0 - 6.0 * nf * inv_pow2(diam), "Cor2.6-odd-inner-diam")
                } else {
                    (
                        7.0 * nf / 2.0 - 2.0 * nf * inv_pow2(diam - 1),
                        "Cor2.6-even-inner-diam",
                    )
                };
                return FormulaResult::covered(
                    value,
                    FormulaTrace::new(id)
                        .with_diam(diam)
                        .with_inner_diam_parity(Parity::of(inner)),
                );
            }
            let t = n % (k - 1);
            let inner = even_k_diameter(k - 1, n);
            let inner_odd = inner % 2 == 1;
            let base = nf * kf / 2.0 + nf * (kf - 1.0) * (1.0 - inv_pow2(diam - 2));
            let (value, id) = match t {
                2 => {
                    if inner_odd {
                        (
                            nf * kf / 2.0 + nf * (kf - 1.0) * (1.0 - 3.0 * inv_pow2(diam)),
                            "Thm2.4-odd-inner-diam",
                        )
                    } else {
                        (
                            nf * kf / 2.0 + nf * (kf - 1.0) * (1.0 - inv_pow2(diam - 1)),
                            "Thm2.4-even-inner-diam",
                        )
                    }
                }
                0 => {
                    if inner_odd {
                        (
                            base + 2.0 * nf * (kf - 2.0) * inv_pow2(diam),
                            "Thm2.5-odd-inner-diam",
                        )
                    } else {
                        (base + nf * (kf - 3.0) * inv_pow2(diam), "Thm2.5-even-inner-diam")
                    }
                }
                _ => {
                    if inner_odd {
                        (
                            base + nf * (kf + t as f64 - 3.0) * inv_pow2(diam),
                            "Thm2.3-odd-inner-diam",
                        )
                    } else {
                        (
                            base + nf * (t as f64 - 2.0) * inv_pow2(diam),
                            "Thm2.3-even-inner-diam",
                        )
                    }
                }
            };
            FormulaResult::covered(
                value,
                FormulaTrace::new(id)
                    .with_t(t, k - 1)
                    .with_diam(diam)
                    .with_inner_diam_parity(Parity::of(inner)),
            )
        }
        ParityCase::OddKOddN => {
            if diam == 1 {
                return FormulaResult::covered(
                    nf * (nf - 1.0) / 2.0,
                    FormulaTrace::new("Thm2.7-diam1").with_diam(diam),
                );
            }
            if diam == 2 {
                let value = (n * n + n * k - n + 1) as f64 / 4.0;
                return FormulaResult::covered(
                    value,
                    FormulaTrace::new("Thm2.7-diam2").with_diam(diam),
                );
            }
            let t = (n - k - 1) % (2 * (k - 1));
            let apex = apex_value(k, t, diam);
            let rm = rm_value(k, t, diam);
            let mut value = apex;
            for j in 0..=(diam as usize - 3) {
                value += (kf - 1.0) * (apex - ring_deficit(j));
            }
            let rm_count = n - (k - 1) * (diam as usize - 2) - 1;
            value += rm_count as f64 * rm;
            let a = (diamf - 2.0) * (kf - 1.0);
            let b = 1.0 - inv_pow2(diam - 2);
            FormulaResult::covered(
                value,
                FormulaTrace::new("Thm2.8")
                    .with_t(t, 2 * (k - 1))
                    .with_diam(diam)
                    .with_a(a)
                    .with_b(b),
            )
        }
    }
}

/// Closed-form closeness of the consecutive circulant graph `C_{n,[l]}`
/// (Corollary 2.10): with `t = (n-1) mod 2l`, `n(2l + 2^{-diam}(t-4l))` and
/// `diam = ceil(n/2l)` for `t != 0`, else `2nl(1 - 2^{-diam})` with
/// `diam = floor(n/2l)`. Shares Theorem 2.1's code path with `k = 2l`.
pub fn circulant_closeness_formula(n: usize, l: usize) -> Result<FormulaResult> {
    if n == 0 || l == 0 || l > n / 2 {
        return Err(Error::InvalidCirculantParams { n, l });
    }
    let t = (n - 1) % (2 * l);
    let (diam, id) = if t != 0 {
        (n.div_ceil(2 * l) as u32, "Cor2.10-t")
    } else {
        ((n / (2 * l)) as u32, "Cor2.10-t0")
    };
    Ok(FormulaResult::covered(
        even_k_closeness_value(2 * l, n, t, diam),
        FormulaTrace::new(id).with_t(t, 2 * l).with_diam(diam),
    ))
}

/// Closed-form vertex residual closeness `R(H_{k,n})`.
///
/// Dispatch: even k > 2 — Theorem 3.1 (diam > 2, or diam = 2 with
/// `n = 1 (mod k)`) else the vanishing-`D_0` clause of Remark 3.2; odd
/// k > 3, even n, diam > 2 — Theorem 3.3; k = 3, even n, diam > 2 —
/// Corollary 3.4; odd k > 3, odd n, diam > 2 — Theorem 3.5; k = 3, odd n —
/// Corollary 3.6 (diam > 3) or the Remark 3.7 table (n in {5,7,9,11}).
/// Everything else is not covered.
pub fn residual_formula(params: HararyParams) -> FormulaResult {
    let (k, n) = (params.k(), params.n());
    if k == 2 {
        return FormulaResult::NotCoveredByPaper;
    }
    let diam = harary_diameter(params).expect("k >= 3 always has a closed-form diameter");

    // The k=3 odd-n table stands on its own: no closeness value needed.
    if k == 3 && n % 2 == 1 && diam <= 3 {
        let value = match n {
            5 => 5.0,
            7 => 11.0,
            9 => 17.5,
            11 => 24.875,
            _ => return FormulaResult::NotCoveredByPaper,
        };
        return FormulaResult::covered(value, FormulaTrace::new("Rem3.7-table").with_diam(diam));
    }

    let Some(c) = closeness_formula(params).value() else {
        return FormulaResult::NotCoveredByPaper;
    };
    let (kf, nf, diamf) = (k as f64, n as f64, f64::from(diam));
    let scaled = (nf - 2.0) / nf * c;

    match params.parity_case() {
        ParityCase::EvenK => {
            if diam > 2 || (diam == 2 && n % k == 1) {
                let (value, id, d_v) = if n % k == 1 {
                    let id = if diam > 2 { "Thm3.1-mod1" } else { "Thm3.1-mod1-diam2" };
                    (
                        scaled - 1.0 + inv_pow2(diam) * (1.0 + diamf),
                        id,
                        tail_sum(diam),
                    )
                } else {
                    (
                        scaled - 1.0 + inv_pow2(diam - 1) * diamf,
                        "Thm3.1-other",
                        tail_sum(diam - 1),
                    )
                };
                FormulaResult::covered(
                    value,
                    FormulaTrace::new(id)
                        .with_t(n % k, k)
                        .with_diam(diam)
                        .with_d_v(d_v),
                )
            } else {
                FormulaResult::covered(
                    scaled,
                    FormulaTrace::new("Rem3.2-vanishing")
                        .with_t(n % k, k)
                        .with_diam(diam)
                        .with_d_v(0.0),
                )
            }
        }
        ParityCase::OddKEvenN => {
            if diam <= 2 {
                return FormulaResult::NotCoveredByPaper;
            }
            if k == 3 {
                let (value, id, d_v) = if n == 4 * diam as usize {
                    (
                        scaled - 1.5 + (2.0 * diamf + 1.0) * inv_pow2(diam),
                        "Cor3.4-boundary",
                        1.5 - (2.0 * diamf + 1.0) * inv_pow2(diam),
                    )
                } else {
                    (
                        scaled - 1.5 * (1.0 - diamf * inv_pow2(diam - 1)),
                        "Cor3.4-other",
                        1.5 * tail_sum(diam - 1),
                    )
                };
                return FormulaResult::covered(
                    value,
                    FormulaTrace::new(id).with_diam(diam).with_d_v(d_v),
                );
            }
            let (value, id, d_v) = if n == (k - 1) * (2 * diam as usize - 1) + 2 {
                (
                    scaled - (1.0 - (1.0 + diamf) * inv_pow2(diam)),
                    "Thm3.3-boundary",
                    tail_sum(diam),
                )
            } else {
                (
                    scaled - (1.0 - diamf * inv_pow2(diam - 1)),
                    "Thm3.3-other",
                    tail_sum(diam - 1),
                )
            };
            FormulaResult::covered(
                value,
                FormulaTrace::new(id).with_diam(diam).with_d_v(d_v),
            )
        }
        ParityCase::OddKOddN => {
            if k == 3 {
                // diam > 3 here; smaller diameters took the table above.
                let t = (n - 4) % 4;
                let (value, id, d_v) = if t == 3 {
                    (
                        c - 11.75 + (8.0 * diamf + 11.0) * inv_pow2(diam),
                        "Cor3.6-t3",
                        15.0 / 4.0 - (16.0 * diamf - 2.0) * inv_pow2(diam + 1),
                    )
                } else {
                    (
                        c - 11.75 + (9.0 * diamf + 13.0) * inv_pow2(diam),
                        "Cor3.6-t1",
                        15.0 / 4.0 - (9.0 * diamf - 3.0) * inv_pow2(diam),
                    )
                };
                return FormulaResult::covered(
                    value,
                    FormulaTrace::new(id)
                        .with_t(t, 4)
                        .with_diam(diam)
                        .with_d_v(d_v),
                );
            }
            if diam <= 2 {
                return FormulaResult::NotCoveredByPaper;
            }
            let t = (n - k - 1) % (2 * (k - 1));
            let value =
                c - 3.0 * kf - 2.0 + (4.0 * kf - 3.0 - t as f64 + 3.0 * diamf) * inv_pow2(diam - 1);
            FormulaResult::covered(
                value,
                FormulaTrace::new("Thm3.5")
                    .with_t(t, 2 * (k - 1))
                    .with_diam(diam)
                    .with_d_v(3.0 * tail_sum(diam - 1)),
            )
        }
    }
}
