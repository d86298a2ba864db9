//! Real roots of a monic cubic.
//!
//! Closed form (trigonometric branch for three real roots, Cardano otherwise)
//! followed by a few Newton steps on the undepressed polynomial. Callers are
//! expected to pass coefficients scaled so that the roots are of order one.

use std::f64::consts::PI;

/// Real roots of `x³ + a x² + b x + c = 0`, ascending, repeated roots merged.
pub fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let disc = q * q / 4.0 + p * p * p / 27.0;
    let mut roots = if disc < 0.0 {
        // three distinct real roots, p < 0 here
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - shift)
            .collect::<Vec<_>>()
    } else {
        let big = -q.signum() * (q.abs() / 2.0 + disc.sqrt()).cbrt();
        let small = if big != 0.0 { -p / (3.0 * big) } else { 0.0 };
        let mut r = vec![big + small - shift];
        if disc == 0.0 && p != 0.0 {
            // double root
            r.push(-(big + small) / 2.0 - shift);
        }
        r
    };

    for r in roots.iter_mut() {
        *r = polish(a, b, c, *r);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs())));
    roots
}

fn polish(a: f64, b: f64, c: f64, mut x: f64) -> f64 {
    for _ in 0..4 {
        let f = ((x + a) * x + b) * x + c;
        let df = (3.0 * x + 2.0 * a) * x + b;
        if df == 0.0 || !f.is_finite() {
            break;
        }
        let step = f / df;
        let next = x - step;
        let f_next = ((next + a) * next + b) * next + c;
        if f_next.abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}
