//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.

/// Why an integration stopped early.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepFailure {
    pub t: f64,
    pub step: f64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_steps: 10_000_000 }
    }
}

// Butcher tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b*, the embedded error weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..N {
            out[i] += coef * k[i];
        }
    }
    out
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    /// Advance `y` from `t0` to `t1`. `step` carries the step-size guess in
    /// and the last accepted size out, so consecutive segments stay cheap.
    pub fn advance<const N: usize, F>(
        &self,
        f: &F,
        t0: f64,
        y: [f64; N],
        t1: f64,
        step: &mut f64,
    ) -> Result<[f64; N], StepFailure>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
    {
        let span = t1 - t0;
        if span == 0.0 {
            return Ok(y);
        }
        let dir = span.signum();
        let mut t = t0;
        let mut y = y;
        let mut h = if *step > 0.0 { step.min(span.abs()) } else { 1e-3 * span.abs() };
        let mut k1 = f(t, &y);
        let mut steps = 0usize;

        loop {
            let remaining = (t1 - t) * dir;
            if remaining <= 0.0 {
                break;
            }
            let last = h >= remaining;
            let hs = if last { remaining } else { h } * dir;

            let k2 = f(t + C2 * hs, &axpy(&y, &[(hs * A21, &k1)]));
            let k3 = f(t + C3 * hs, &axpy(&y, &[(hs * A31, &k1), (hs * A32, &k2)]));
            let k4 = f(t + C4 * hs, &axpy(&y, &[(hs * A41, &k1), (hs * A42, &k2), (hs * A43, &k3)]));
            let k5 = f(t + C5 * hs, &axpy(&y, &[(hs * A51, &k1), (hs * A52, &k2), (hs * A53, &k3), (hs * A54, &k4)]));
            let k6 = f(
                t + hs,
                &axpy(&y, &[(hs * A61, &k1), (hs * A62, &k2), (hs * A63, &k3), (hs * A64, &k4), (hs * A65, &k5)]),
            );
            let y_new = axpy(&y, &[(hs * B1, &k1), (hs * B3, &k3), (hs * B4, &k4), (hs * B5, &k5), (hs * B6, &k6)]);
            let t_new = if last { t1 } else { t + hs };
            let k7 = f(t_new, &y_new);

            let mut err = 0.0;
            for i in 0..N {
                let e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err += (e / scale).powi(2);
            }
            let err = (err / N as f64).sqrt();
            if !err.is_finite() {
                return Err(StepFailure { t, step: hs.abs(), reason: "non-finite error estimate" });
            }

            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                t = t_new;
                y = y_new;
                k1 = k7;
                if !last {
                    *step = h;
                }
                h *= factor;
            } else {
                h *= factor.min(1.0);
            }

            steps += 1;
            if steps > self.max_steps {
                return Err(StepFailure { t, step: h, reason: "step budget exhausted" });
            }
            if h <= 16.0 * f64::EPSILON * t.abs().max(span.abs()) {
                return Err(StepFailure { t, step: h, reason: "step size underflow" });
            }
        }
        Ok(y)
    }
}
