//! Dormand–Prince 5(4) stepper for small autonomous-in-shape systems.

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub(crate) type State = [f64; 2];

/// One step of size `h`: fifth-order solution and embedded error estimate.
pub(crate) fn dp_step<F: Fn(f64, &State) -> State>(f: &F, x: f64, y: &State, h: f64) -> (State, State) {
    let mut k = [[0.0; 2]; 7];
    for i in 0..7 {
        let mut yi = *y;
        for (j, kj) in k.iter().enumerate().take(i) {
            for d in 0..2 {
                yi[d] += h * A[i][j] * kj[d];
            }
        }
        k[i] = f(x + C[i] * h, &yi);
    }
    let mut y5 = *y;
    let mut err = [0.0; 2];
    for i in 0..7 {
        for d in 0..2 {
            y5[d] += h * B5[i] * k[i][d];
            err[d] += h * (B5[i] - B4[i]) * k[i][d];
        }
    }
    (y5, err)
}

/// Weighted max-norm of the error estimate.
pub(crate) fn error_norm(y0: &State, y1: &State, err: &State, atol: f64, rtol: f64) -> f64 {
    let mut worst = 0.0f64;
    for d in 0..2 {
        let scale = atol + rtol * y0[d].abs().max(y1[d].abs());
        worst = worst.max(err[d].abs() / scale);
    }
    worst
}
