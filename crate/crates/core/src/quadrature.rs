//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature on a fixed
//! set of initial panels.
//!
//! Callers supply the panel breakpoints, typically the zeros of an
//! oscillating factor, so that each initial panel holds at most about one
//! half-oscillation. Panels are then bisected in order of decreasing error
//! estimate until the global target is met or the panel budget runs out.

// Nodes and weights are kept at their tabulated precision.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_842_965_000,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    result: f64,
    error: f64,
    /// Error floor from rounding; bisecting below it is pointless.
    floor: f64,
}

impl Segment {
    fn refinable(&self) -> bool {
        self.error > self.floor * (1.0 + 1e-12)
    }
}

// Max-heap on error; position breaks ties so the refinement order is
// deterministic.
impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    // QUADPACK error scaling.
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    Segment {
        a,
        b,
        result,
        error: err.max(floor),
        floor,
    }
}

/// Value and error estimate of a definite integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// True when the estimate is limited by rounding rather than by the
    /// requested tolerance.
    pub roundoff_limited: bool,
    pub segments: usize,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from one
/// Gauss–Kronrod panel per consecutive pair of breakpoints.
///
/// Succeeds when the summed error estimate is at most `rel_tol * |I|`, or
/// when every panel has reached its rounding floor. Fails with
/// [`Error::Convergence`] if more than `max_segments` panels would be needed.
pub fn integrate_panels<F>(
    f: F,
    breaks: &[f64],
    rel_tol: f64,
    max_segments: usize,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least two breakpoints".into(),
        ));
    }
    let mut heap: BinaryHeap<Segment> = breaks.windows(2).map(|w| gk21(&f, w[0], w[1])).collect();

    let mut total: CompensatedSum = heap.iter().map(|s| s.result).collect();
    let mut err_total: f64 = heap.iter().map(|s| s.error).sum();

    loop {
        let target = rel_tol * total.value().abs();
        if err_total <= target {
            return Ok(finish(heap, false));
        }
        let worst = *heap.peek().expect("non-empty heap");
        if !worst.refinable() {
            return Ok(finish(heap, true));
        }
        if heap.len() >= max_segments {
            return Err(Error::Convergence {
                estimate: err_total,
                target,
            });
        }
        heap.pop();
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total.add(-worst.result);
        total.add(left.result);
        total.add(right.result);
        err_total += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

fn finish(heap: BinaryHeap<Segment>, roundoff_limited: bool) -> Estimate {
    let mut segs = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segs
        .iter()
        .map(|s| s.result)
        .collect::<CompensatedSum>()
        .value();
    let error = segs.iter().map(|s| s.error).sum();
    Estimate {
        value,
        error,
        roundoff_limited,
        segments: segs.len(),
    }
}
