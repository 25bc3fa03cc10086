use astro_float::BigFloat;
use num_complex::Complex;

use super::gauss::GaussLegendre;
use super::mp::{log2_abs, to_f64, Mp, MpComplex};
use crate::error::{Error, Result};
use crate::real::canonical;

const GL_ORDER: usize = 32;
const MAX_ESCALATIONS: usize = 6;
const GUARD_BITS: usize = 32;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Oracle settings.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Significant decimal digits of the internal arithmetic.
    pub digits: u32,
    /// Minimum number of panels on the integration ray.
    pub panels: usize,
    /// Extra margin (natural-log units) in the tail cutoff.
    pub truncation_safety: f64,
    /// Mesh halvings tried before giving up at a given precision.
    pub max_refinements: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            digits: 50,
            panels: 8,
            truncation_safety: 4.6,
            max_refinements: 5,
        }
    }
}

impl OracleConfig {
    pub fn with_digits(digits: u32) -> Self {
        OracleConfig {
            digits,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(9..=2000).contains(&self.digits) {
            return Err(Error::Domain(format!(
                "oracle digits must lie in 9..=2000, got {}",
                self.digits
            )));
        }
        if self.panels == 0 || !(self.truncation_safety >= 0.0) {
            return Err(Error::Domain("invalid oracle panel settings".into()));
        }
        Ok(())
    }

    /// Relative agreement demanded between two successive meshes.
    pub fn target(&self) -> f64 {
        10f64.powi(-(self.digits as i32 - 8))
    }
}

/// Oracle output.
#[derive(Debug, Clone)]
pub struct OracleValue {
    pub value: MpComplex,
    pub digits: u32,
    /// Working precision actually used, in bits.
    pub precision_bits: usize,
    pub panels: usize,
    /// End of the integration ray.
    pub radius: f64,
    /// Angle of the integration ray.
    pub ray_angle: f64,
    /// `|S_fine − S_coarse| / |S_fine|` of the last two meshes.
    pub error_estimate: f64,
}

impl OracleValue {
    pub fn to_complex64(&self) -> Result<Complex<f64>> {
        self.value.to_complex64()
    }

    /// `|approx − value| / |value|`, with the difference formed at oracle
    /// precision so errors far below double-precision rounding are resolved.
    pub fn relative_error(&self, approx: Complex<f64>) -> f64 {
        let Ok(mp) = Mp::new(self.precision_bits) else {
            return f64::NAN;
        };
        let diff = mp.csub(&mp.cfrom(approx), &self.value);
        to_f64(&mp.div(&mp.cnorm(&diff), &mp.cnorm(&self.value)))
    }
}

/// Ray `t = s·d`, `s ≥ 0`, with `|arg d| < π/8`. Because the integrand is
/// even and entire and decays like `e^{−Re(d⁴) s⁴}` in that sector, the
/// half-line integral is the same along every such ray.
#[derive(Debug, Clone, Copy)]
struct Ray {
    d: Complex<f64>,
    /// `d⁴`, `x d²`, `y d`
    q: Complex<f64>,
    x: Complex<f64>,
    y: Complex<f64>,
}

/// Largest ray angle tried; keeps `Re d⁴ ≥ cos(3π/8)`.
const MAX_RAY_ANGLE: f64 = 3.0 * std::f64::consts::PI / 32.0;
const RAY_ANGLES: i32 = 12;

impl Ray {
    fn new(x: Complex<f64>, y: Complex<f64>, theta: f64) -> Self {
        let d = if theta == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            Complex::from_polar(1.0, theta)
        };
        let d2 = d * d;
        Ray {
            d,
            q: d2 * d2,
            x: x * d2,
            y: y * d,
        }
    }

    /// Upper bound for `log |integrand|` at `s`.
    fn decay(&self, s: f64) -> f64 {
        let s2 = s * s;
        -self.q.re * s2 * s2 - self.x.re * s2 + self.y.im.abs() * s
    }

    /// `|φ'| + √|φ''| + 1` for the exponent `φ(s) = −qs⁴ − xs² ± iys`.
    fn rate(&self, s: f64) -> f64 {
        (4.0 * self.q * s.powi(3) + 2.0 * self.x * s).norm()
            + self.y.norm()
            + (12.0 * self.q * s * s + 2.0 * self.x).norm().sqrt()
            + 1.0
    }

    /// Last point above `floor` where the decay bound crosses the target.
    fn cutoff(&self, digits: u32, safety: f64, floor: f64) -> f64 {
        let target = digits as f64 * std::f64::consts::LN_10 + safety;
        let g = |s: f64| -self.decay(s) - target;
        // every term of g is dominated beyond this point
        let c = self.q.re;
        let a = self.x.re.min(0.0).abs();
        let b = self.y.im.abs();
        let upper = floor
            .max((3.0 * a / c).sqrt())
            .max((3.0 * b / c).cbrt())
            .max((3.0 * target / c).powf(0.25))
            * 1.01;
        // scan down from `upper` for the last sign change, then bisect
        let steps = 512;
        let h = (upper - floor) / steps as f64;
        let mut hi = upper;
        let mut lo = None;
        for i in 1..=steps {
            let s = upper - h * i as f64;
            if g(s) < 0.0 {
                lo = Some(s);
                break;
            }
            hi = s;
        }
        let Some(mut lo) = lo else {
            return floor;
        };
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// Natural log of the largest integrand bound on `[0, end]`.
    fn log_peak(&self, end: f64) -> f64 {
        (0..=1024)
            .map(|i| self.decay(end * i as f64 / 1024.0))
            .fold(0.0_f64, f64::max)
    }
}

/// Ray whose integrand peak is lowest. `|P|` does not depend on the ray, so
/// this minimizes the cancellation the quadrature has to resolve. The real
/// axis is kept unless another ray saves at least 8 bits.
fn choose_ray(x: Complex<f64>, y: Complex<f64>, digits: u32, safety: f64) -> Ray {
    let axis = Ray::new(x, y, 0.0);
    let axis_peak = axis.log_peak(axis.cutoff(digits, safety, 0.0));
    let mut best = (axis, axis_peak);
    for j in (-RAY_ANGLES..=RAY_ANGLES).filter(|&j| j != 0) {
        let ray = Ray::new(x, y, MAX_RAY_ANGLE * j as f64 / RAY_ANGLES as f64);
        let peak = ray.log_peak(ray.cutoff(digits, safety, 0.0));
        if peak < best.1 {
            best = (ray, peak);
        }
    }
    if best.1 < axis_peak - 8.0 * std::f64::consts::LN_2 {
        best.0
    } else {
        axis
    }
}

/// Smallest `T ≥ 2` beyond which `t⁴ + Re(x) t² − |Im y| t` stays above
/// `digits·ln 10 + safety`, i.e. the integrand modulus
/// `|e^{−t⁴−xt²} cos(yt)| ≤ e^{−t⁴ − Re(x)t² + |Im y|t}` is below the target.
pub fn truncation_radius(x: Complex<f64>, y: Complex<f64>, digits: u32, safety: f64) -> f64 {
    Ray::new(x, y, 0.0).cutoff(digits, safety, 2.0)
}

/// `P(x,y) = ∫₀^∞ e^{−t⁴−xt²} cos(yt) dt` by composite 32-point
/// Gauss–Legendre quadrature in multiprecision arithmetic.
///
/// The integral is taken along the ray `arg t = θ`, `|θ| ≤ 3π/32`, with the
/// lowest integrand peak (the real axis unless the integrand grows there).
/// Panels are sized by the local variation rate `|φ'| + √|φ''|` of the
/// exponent `φ(t) = −t⁴ − xt² ± iyt`. The mesh is refined until two
/// successive results agree to `10^{−(digits−8)}` relative. When the result
/// sits far below the integrand peak, both the working precision and the
/// mesh resolution are raised by the digits lost to cancellation.
pub fn oracle_quadrature(x: Complex<f64>, y: Complex<f64>, cfg: &OracleConfig) -> Result<OracleValue> {
    cfg.validate()?;
    if !(x.re.is_finite() && x.im.is_finite() && y.re.is_finite() && y.im.is_finite()) {
        return Err(Error::Domain("oracle needs finite x and y".into()));
    }
    let x = canonical(x);
    let y = canonical(y);
    let ray = choose_ray(x, y, cfg.digits, cfg.truncation_safety);
    let radius = ray.cutoff(cfg.digits, cfg.truncation_safety, 2.0);
    // beyond `cutoff` the integrand is below the target everywhere, so a
    // single panel up to `radius` suffices
    let cutoff = ray.cutoff(cfg.digits, cfg.truncation_safety, 0.0).min(radius);
    let log2_peak = ray.log_peak(radius) / std::f64::consts::LN_2;
    let target = cfg.target();
    let needed = (cfg.digits as f64 + 8.0) * LOG2_10;
    let mut bits = needed.ceil() as usize + GUARD_BITS;
    // bits lost to cancellation between the integrand peak and the result
    let loss = |v: &MpComplex, mp: &Mp| (log2_peak + radius.log2().max(0.0) - log2_abs(&mp.cnorm(v))).max(0.0);

    let mut mp = Mp::new(bits)?;
    let mut rule = GaussLegendre::new(GL_ORDER, &mp);
    let mut integrand = Integrand::new(x, y, ray.d, &mp);
    let mut resolution = base_resolution(cfg.digits as f64);
    let mut previous: Option<MpComplex> = None;
    let mut last_err = String::from("no quadrature pass completed");
    for _ in 0..cfg.max_refinements as usize + MAX_ESCALATIONS {
        let mesh = build_mesh(&ray, radius, cutoff, resolution, cfg.panels);
        let current = integrate(&mesh, &rule, &integrand, &mut mp);
        if let Some(prev) = &previous {
            let diff = mp.cnorm(&mp.csub(&current, prev));
            let size = mp.cnorm(&current);
            let rel = if size.is_zero() {
                f64::INFINITY
            } else {
                to_f64(&mp.div(&diff, &size))
            };
            if diff.is_zero() || rel <= target {
                return Ok(OracleValue {
                    value: current,
                    digits: cfg.digits,
                    precision_bits: bits,
                    panels: mesh.len() - 1,
                    radius,
                    ray_angle: ray.d.arg(),
                    error_estimate: if diff.is_zero() { 0.0 } else { rel },
                });
            }
            last_err = format!("meshes disagree at relative {rel:e} with {bits} bits");
        }
        // Quadrature and rounding errors scale with the integrand peak, so
        // digits lost to cancellation must be bought back in both mesh
        // resolution and precision. An unresolved result underestimates the
        // loss, which is why this is re-planned after every pass.
        let lost = loss(&current, &mp);
        let want_bits = (needed + lost).ceil() as usize + GUARD_BITS;
        if want_bits > bits {
            // a result at the rounding-noise floor only bounds the loss from below
            let noise = needed + lost >= (bits - GUARD_BITS / 2) as f64;
            bits = if noise { want_bits.max(2 * bits) } else { want_bits };
            mp = Mp::new(bits)?;
            rule = GaussLegendre::new(GL_ORDER, &mp);
            integrand = Integrand::new(x, y, ray.d, &mp);
        }
        resolution = (resolution / 2.0).min(base_resolution(cfg.digits as f64 + lost / LOG2_10));
        previous = Some(current);
    }
    Err(Error::OracleConvergence(last_err))
}

/// Panel width × local variation rate at which the 32-point rule's error on
/// `e^{iωt}`, `(ωh)^{64} (32!)^4 / (65 (64!)^3)` with `h` the half-width,
/// reaches the target.
fn base_resolution(digits: f64) -> f64 {
    const LOG_RULE_CONSTANT: f64 = 289.3 + 4.17;
    let log_target = (digits + 8.0) * std::f64::consts::LN_10;
    2.0 * ((LOG_RULE_CONSTANT - log_target) / (2 * GL_ORDER) as f64).exp()
}

fn build_mesh(ray: &Ray, radius: f64, cutoff: f64, resolution: f64, min_panels: usize) -> Vec<f64> {
    let max_width = cutoff.max(f64::MIN_POSITIVE) / min_panels as f64;
    let mut mesh = vec![0.0];
    let mut s = 0.0;
    while s < cutoff {
        let mut h = (resolution / ray.rate(s)).min(max_width);
        h = (resolution / ray.rate(s + h)).min(max_width);
        s = (s + h).min(cutoff);
        if cutoff - s < 1e-3 * h {
            s = cutoff;
        }
        mesh.push(s);
    }
    if radius > s {
        mesh.push(radius);
    }
    mesh
}

fn integrate(mesh: &[f64], rule: &GaussLegendre, f: &Integrand, mp: &mut Mp) -> MpComplex {
    let mut total = mp.czero();
    for w in mesh.windows(2) {
        let (a, b) = (mp.f(w[0]), mp.f(w[1]));
        let mid = mp.mul(&mp.f(0.5), &mp.add(&a, &b));
        let half = mp.mul(&mp.f(0.5), &mp.sub(&b, &a));
        let mut panel = mp.czero();
        for (node, weight) in rule.nodes.iter().zip(&rule.weights) {
            let offset = mp.mul(&half, node);
            let left = f.eval(&mp.sub(&mid, &offset), mp);
            let right = f.eval(&mp.add(&mid, &offset), mp);
            panel = mp.cadd(&panel, &mp.cscale(&mp.cadd(&left, &right), weight));
        }
        total = mp.cadd(&total, &mp.cscale(&panel, &half));
    }
    mp.cmul(&total, &f.d)
}

/// `e^{−qs⁴−x's²} cos(y's)` for real `s ≥ 0`, with `q = d⁴`, `x' = xd²`,
/// `y' = yd` formed at working precision so the integrand is exactly
/// `f(sd)` along a straight ray.
struct Integrand {
    d: MpComplex,
    q: MpComplex,
    x: MpComplex,
    y: MpComplex,
}

impl Integrand {
    fn new(x: Complex<f64>, y: Complex<f64>, d: Complex<f64>, mp: &Mp) -> Self {
        let d = mp.cfrom(d);
        let d2 = mp.cmul(&d, &d);
        Integrand {
            q: mp.cmul(&d2, &d2),
            x: mp.cmul(&mp.cfrom(x), &d2),
            y: mp.cmul(&mp.cfrom(y), &d),
            d,
        }
    }

    fn eval(&self, s: &BigFloat, mp: &mut Mp) -> MpComplex {
        let s2 = mp.mul(s, s);
        let s4 = mp.mul(&s2, &s2);
        let log_mod = mp.add(&mp.mul(&self.q.re, &s4), &mp.mul(&self.x.re, &s2)).neg();
        let modulus = mp.exp(&log_mod);
        // e^{−i (Im q s⁴ + Im x' s²)}
        let (c1, s1) = if self.q.im.is_zero() && self.x.im.is_zero() {
            (mp.f(1.0), mp.f(0.0))
        } else {
            let phase = mp.add(&mp.mul(&self.q.im, &s4), &mp.mul(&self.x.im, &s2));
            let (sn, cs) = mp.sin_cos(&phase);
            (cs, sn.neg())
        };
        // cos(ys) = cos(as)cosh(bs) − i sin(as)sinh(bs); even in (a, b) → (−a, −b)
        let (c2, s2) = if self.y.re.is_zero() {
            (mp.f(1.0), mp.f(0.0))
        } else {
            let a_s = mp.mul(&self.y.re, s);
            let (sn, cs) = mp.sin_cos(&a_s.abs());
            (cs, if a_s.is_negative() { sn.neg() } else { sn })
        };
        let (ch, sh) = if self.y.im.is_zero() {
            (mp.f(1.0), mp.f(0.0))
        } else {
            let b_s = mp.mul(&self.y.im, s);
            let e = mp.exp(&b_s.abs());
            let inv = mp.recip(&e);
            let half = mp.f(0.5);
            let ch = mp.mul(&half, &mp.add(&e, &inv));
            let sh = mp.mul(&half, &mp.sub(&e, &inv));
            (ch, if b_s.is_negative() { sh.neg() } else { sh })
        };
        let cos_ys = MpComplex {
            re: mp.mul(&c2, &ch),
            im: mp.mul(&s2, &sh).neg(),
        };
        let rot = MpComplex {
            re: mp.mul(&modulus, &c1),
            im: mp.mul(&modulus, &s1),
        };
        mp.cmul(&rot, &cos_ys)
    }
}
