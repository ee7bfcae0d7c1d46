//! Closed-form bounds with applicability guards.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Which number a report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    IKr,
    GammaKr,
    I,
    Gamma,
    /// i(G) and γ(G), which coincide on the families where this is reported.
    IAndGamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub value: Option<i64>,
    pub applicable: bool,
    pub reason: String,
    pub provenance: String,
    pub quantity: Quantity,
    pub sense: Sense,
}

impl BoundReport {
    fn hit(name: &str, q: Quantity, sense: Sense, value: i64, reason: &str, prov: &str) -> Self {
        BoundReport {
            bound_name: name.into(),
            value: Some(value),
            applicable: true,
            reason: reason.into(),
            provenance: prov.into(),
            quantity: q,
            sense,
        }
    }

    fn miss(name: &str, q: Quantity, sense: Sense, reason: &str, prov: &str) -> Self {
        BoundReport {
            bound_name: name.into(),
            value: None,
            applicable: false,
            reason: reason.into(),
            provenance: prov.into(),
            quantity: q,
            sense,
        }
    }

    /// Whether `x` is consistent with this bound (always true when not applicable).
    pub fn admits(&self, x: i64) -> bool {
        match (self.applicable, self.value) {
            (true, Some(v)) => match self.sense {
                Sense::Lower => v <= x,
                Sense::Upper => x <= v,
                Sense::Exact => x == v,
            },
            _ => true,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.bound_name,
            self.value.map(|v| v.to_string()).unwrap_or_default(),
            self.applicable,
            self.provenance
        )
    }
}

pub const CSV_HEADER: &str = "bound_name,value,applicable,provenance";

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// ⌈n(k+1)/(Δ+1)⌉ as a lower bound on i[kR].
pub fn lb_degree(n: i64, max_degree: i64, k: i64, connected: bool, nontrivial: bool) -> BoundReport {
    let name = "lb_degree";
    let prov = "degree lower bound n(k+1)/(Delta+1)";
    if !(connected && nontrivial) {
        return BoundReport::miss(name, Quantity::IKr, Sense::Lower, "needs a connected nontrivial graph", prov);
    }
    let reason = if max_degree >= 3 {
        "Delta >= 3"
    } else if max_degree >= k {
        "Delta >= k (holds for gamma[kR] as well)"
    } else if k >= 4 && max_degree >= 1 {
        "k >= 4 and k >= Delta >= 1"
    } else {
        return BoundReport::miss(name, Quantity::IKr, Sense::Lower, "Delta < 3, Delta < k and k < 4", prov);
    };
    let v = div_ceil(n * (k + 1), max_degree + 1);
    BoundReport::hit(name, Quantity::IKr, Sense::Lower, v, reason, prov)
}

/// The same quantity as a lower bound on γ[kR], which is only known when Δ >= k.
pub fn lb_degree_gamma(n: i64, max_degree: i64, k: i64, connected: bool, nontrivial: bool) -> BoundReport {
    let name = "lb_degree_gamma";
    let prov = "degree lower bound n(k+1)/(Delta+1), Delta >= k";
    if connected && nontrivial && max_degree >= k && max_degree >= 1 {
        let v = div_ceil(n * (k + 1), max_degree + 1);
        BoundReport::hit(name, Quantity::GammaKr, Sense::Lower, v, "Delta >= k", prov)
    } else {
        BoundReport::miss(name, Quantity::GammaKr, Sense::Lower, "needs connected, nontrivial, Delta >= k", prov)
    }
}

/// Equality in the degree bound with k >= 4 and k >= Δ >= 1 forces an
/// independent [k]-Roman graph. Diagnostic only.
pub fn degree_equality_flag(n: i64, max_degree: i64, k: i64, i_kr: i64) -> bool {
    k >= 4 && max_degree >= 1 && k >= max_degree && i_kr * (max_degree + 1) == n * (k + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub lower: i64,
    pub upper: i64,
}

pub fn independence_sandwich(i_val: i64, k: i64) -> Sandwich {
    Sandwich { lower: k * i_val, upper: (k + 1) * i_val }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionBounds {
    pub max_vk1: i64,
    pub min_vk: i64,
}

pub fn partition_bounds(i_val: i64, i_kr: i64, k: i64) -> PartitionBounds {
    PartitionBounds { max_vk1: i_kr - k * i_val, min_vk: ((k + 1) * i_val - i_kr).max(0) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubicPartitionBounds {
    pub max_vk: i64,
    pub min_vk1: i64,
}

pub fn cubic_partition_bounds(
    n: i64,
    i_kr: i64,
    k: i64,
    cubic: bool,
) -> Result<CubicPartitionBounds, BoundError> {
    if k < 2 {
        return Err(BoundError::NotApplicable("needs k >= 2".into()));
    }
    if !cubic {
        return Err(BoundError::NotApplicable("needs a 3-regular graph".into()));
    }
    let den = 3 * k - 5;
    let max_vk = div_floor(8 * i_kr - 2 * (k + 1) * n, den).clamp(0, n);
    let min_vk1 = div_ceil(2 * k * n - 5 * i_kr, den).clamp(0, n);
    Ok(CubicPartitionBounds { max_vk, min_vk1 })
}

pub fn blanusa_bounds(t: i64, i: i64, k: i64) -> Result<Vec<BoundReport>, BoundError> {
    if !(t == 1 || t == 2) {
        return Err(BoundError::BadParameters(format!("t must be 1 or 2, got {}", t)));
    }
    if i < 1 || k < 1 {
        return Err(BoundError::BadParameters("need i >= 1 and k >= 1".into()));
    }
    let odd_case = t == 1 && i >= 3 && i % 2 == 1;
    let mut out = Vec::new();

    let up_prov = "Blanusa upper bound from the special labelings";
    if k >= 2 {
        let v = if odd_case { (k + 1) * (2 * i + 2) + 2 * k } else { (k + 1) * (2 * i + 3) };
        let why = if odd_case { "t=1, odd i >= 3" } else { "generic case" };
        out.push(BoundReport::hit("upper_i_kr", Quantity::IKr, Sense::Upper, v, why, up_prov));
    } else {
        out.push(BoundReport::miss("upper_i_kr", Quantity::IKr, Sense::Upper, "needs k >= 2", up_prov));
    }

    let lo_prov = "Blanusa lower bound";
    let lower = if odd_case && k >= 2 {
        BoundReport::hit(
            "lower_i_kr",
            Quantity::IKr,
            Sense::Lower,
            (k + 1) * (2 * i + 2) + 2 * k - 2,
            "t=1, odd i >= 3, k >= 2",
            lo_prov,
        )
    } else if !odd_case && k >= 4 {
        BoundReport::hit("lower_i_kr", Quantity::IKr, Sense::Lower, (k + 1) * (2 * i + 3), "k >= 4", lo_prov)
    } else if odd_case {
        BoundReport::miss("lower_i_kr", Quantity::IKr, Sense::Lower, "k = 1: only the generic degree bound is known", lo_prov)
    } else {
        BoundReport::miss("lower_i_kr", Quantity::IKr, Sense::Lower, "needs k >= 4 in this case", lo_prov)
    };
    out.push(lower);

    let ex_prov = "Blanusa exact value (k+1)(2i+3)";
    if !odd_case && k >= 4 {
        out.push(BoundReport::hit("exact_i_kr", Quantity::IKr, Sense::Exact, (k + 1) * (2 * i + 3), "k >= 4", ex_prov));
    } else {
        out.push(BoundReport::miss("exact_i_kr", Quantity::IKr, Sense::Exact, "needs k >= 4 outside t=1 odd i >= 3", ex_prov));
    }

    let dom = if odd_case { 2 * i + 4 } else { 2 * i + 3 };
    out.push(BoundReport::hit(
        "i_and_gamma",
        Quantity::IAndGamma,
        Sense::Exact,
        dom,
        if odd_case { "t=1, odd i >= 3" } else { "generic case" },
        "independent domination equals domination on generalized Blanusa snarks",
    ));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    LP1,
    LP0,
}

pub fn loupekine_bounds(ell: i64, sigma: i64, k: i64, variant: Variant) -> Result<Vec<BoundReport>, BoundError> {
    if ell < 3 || ell % 2 == 0 {
        return Err(BoundError::BadParameters(format!("ell must be odd and >= 3, got {}", ell)));
    }
    if sigma < 1 || sigma % 2 == 0 {
        return Err(BoundError::BadParameters(format!("sigma must be odd and >= 1, got {}", sigma)));
    }
    if sigma > ell / 3 {
        return Err(BoundError::BadParameters(format!("sigma must be <= floor(ell/3) = {}", ell / 3)));
    }
    if k < 1 {
        return Err(BoundError::BadParameters("k must be >= 1".into()));
    }
    let n = 7 * ell + sigma;
    let mut out = Vec::new();
    out.push(BoundReport::hit(
        "upper_i_kr",
        Quantity::IKr,
        Sense::Upper,
        match variant {
            Variant::LP1 => 2 * (k + 1) * ell + k * sigma,
            Variant::LP0 => 2 * (k + 1) * ell + (k - 1) * sigma,
        },
        match variant {
            Variant::LP1 => "block labeling plus link vertices at k",
            Variant::LP0 => "double and triple gadget labelings",
        },
        "Loupekine upper bound on i[kR]",
    ));
    let degree = div_ceil((k + 1) * n, 4);
    if variant == Variant::LP0 && k >= 4 {
        out.push(BoundReport::hit("lower_i_kr", Quantity::IKr, Sense::Lower, degree + 1, "LP0, k >= 4", "Loupekine LP0 lower bound"));
    } else {
        out.push(BoundReport::hit("lower_i_kr", Quantity::IKr, Sense::Lower, degree, "degree bound, Delta = 3", "degree lower bound n(k+1)/(Delta+1)"));
    }
    if variant == Variant::LP0 {
        out.push(BoundReport::hit(
            "upper_gamma_kr",
            Quantity::GammaKr,
            Sense::Upper,
            2 * (k + 1) * ell,
            "LP0 triple gadget [k]-RDF",
            "Loupekine LP0 upper bound on gamma[kR]",
        ));
        out.push(BoundReport::hit(
            "lower_gamma",
            Quantity::Gamma,
            Sense::Lower,
            n / 4 + 1,
            "LP0",
            "domination lower bound floor(n/4)+1 on LP0 snarks",
        ));
    }
    Ok(out)
}
