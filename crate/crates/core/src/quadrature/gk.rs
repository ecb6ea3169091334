//! Adaptive Gauss–Kronrod (10/21) on finite intervals.

use alloc::vec::Vec;

#[allow(unused_imports)] // float methods under no_std
use num_traits::Float;

use super::QuadValue;

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
    0.123_491_976_262_065_851_077_208_067_465_218,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_673,
];

#[derive(Clone, Copy, Debug)]
pub(crate) struct Segment<T> {
    pub a: f64,
    pub b: f64,
    pub value: T,
    pub error: f64,
}

/// One GK21 panel with the QUADPACK error heuristic.
pub(crate) fn gk21<T: QuadValue>(f: &mut dyn FnMut(f64) -> T, a: f64, b: f64) -> Segment<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [T::zero(); 21];
    fv[10] = f(c);
    for k in 0..10 {
        let dx = h * XGK[k];
        fv[k] = f(c - dx);
        fv[20 - k] = f(c + dx);
    }
    let mut kron = fv[10] * WGK[10];
    let mut abs_mass = fv[10].magnitude() * WGK[10];
    let mut gauss = T::zero();
    for k in 0..10 {
        let pair = fv[k] + fv[20 - k];
        kron = kron + pair * WGK[k];
        abs_mass += (fv[k].magnitude() + fv[20 - k].magnitude()) * WGK[k];
        if k % 2 == 1 {
            gauss = gauss + pair * WG[k / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fv[10] - mean).magnitude() * WGK[10];
    for k in 0..10 {
        asc += ((fv[k] - mean).magnitude() + (fv[20 - k] - mean).magnitude()) * WGK[k];
    }
    let hh = h.abs();
    let value = kron * h;
    let abs_mass = abs_mass * hh;
    let asc = asc * hh;
    let mut error = ((kron - gauss) * h).magnitude();
    if asc > 0.0 && error > 0.0 {
        error = asc * (1.0f64).min((200.0 * error / asc).powf(1.5));
    }
    let round = 50.0 * f64::EPSILON * abs_mass;
    if round > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(round);
    }
    if !error.is_finite() {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Adaptive<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// Bisects the worst panel until the error target is met or `max_segments`
/// panels exist. Ties go to the lowest index, so runs are reproducible.
pub(crate) fn adaptive<T: QuadValue>(
    f: &mut dyn FnMut(f64) -> T,
    a: f64,
    b: f64,
    panels: usize,
    max_segments: usize,
    abs_tol: f64,
    rel_tol: f64,
) -> Adaptive<T> {
    let panels = panels.max(1);
    let mut segs: Vec<Segment<T>> = Vec::with_capacity(panels + 16);
    let step = (b - a) / panels as f64;
    for k in 0..panels {
        let lo = a + step * k as f64;
        let hi = if k + 1 == panels { b } else { a + step * (k + 1) as f64 };
        segs.push(gk21(f, lo, hi));
    }
    let mut evaluations = 21 * panels;
    loop {
        let (value, error) = totals(&segs);
        let target = abs_tol.max(rel_tol * value.magnitude());
        if error <= target {
            return Adaptive { value, error, evaluations };
        }
        if segs.len() >= max_segments {
            return Adaptive { value, error, evaluations };
        }
        let mut worst = 0;
        for (k, s) in segs.iter().enumerate() {
            if s.error > segs[worst].error {
                worst = k;
            }
        }
        let s = segs[worst];
        let mid = 0.5 * (s.a + s.b);
        if !(mid > s.a && mid < s.b) {
            // Panel can no longer be split in floating point.
            return Adaptive { value, error, evaluations };
        }
        segs[worst] = gk21(f, s.a, mid);
        segs.insert(worst + 1, gk21(f, mid, s.b));
        evaluations += 42;
    }
}

fn totals<T: QuadValue>(segs: &[Segment<T>]) -> (T, f64) {
    let mut v = T::zero();
    let mut e = 0.0;
    for s in segs {
        v = v + s.value;
        e += s.error;
    }
    (v, e)
}
