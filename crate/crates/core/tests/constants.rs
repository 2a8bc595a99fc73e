use braidvol::bounds::{V3, V8};

/// Lobachevsky function Λ(θ) = -∫₀^θ ln|2 sin t| dt.
///
/// Splitting ln(2 sin t) = ln(2t) + ln(sin t / t) leaves a closed form for the
/// singular part and a smooth integrand for composite Simpson quadrature.
fn lobachevsky(theta: f64) -> f64 {
    let singular = theta * ((2.0 * theta).ln() - 1.0);
    let steps = 20_000;
    let h = theta / steps as f64;
    let f = |t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() };
    let mut sum = f(0.0) + f(theta);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    -(singular + sum * h / 3.0)
}

#[test]
fn octahedron_volume_from_lobachevsky() {
    let v8 = 8.0 * lobachevsky(std::f64::consts::FRAC_PI_4);
    assert!((v8 - V8).abs() < 1e-12, "{v8}");
}

#[test]
fn tetrahedron_volume_from_lobachevsky() {
    let v3 = 2.0 * lobachevsky(std::f64::consts::FRAC_PI_6);
    assert!((v3 - V3).abs() < 1e-12, "{v3}");
    let alt = 3.0 * lobachevsky(std::f64::consts::FRAC_PI_3);
    assert!((alt - V3).abs() < 1e-12, "{alt}");
}

#[test]
fn four_decimal_prefixes() {
    assert_eq!(
        format!("{:.4}", V8.trunc() + (V8.fract() * 1e4).trunc() / 1e4),
        "3.6638"
    );
    assert_eq!(
        format!("{:.4}", V3.trunc() + (V3.fract() * 1e4).trunc() / 1e4),
        "1.0149"
    );
}
