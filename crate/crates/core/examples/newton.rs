//! Newton polygons of trinomials and the totally ramified certificate.

use arboreal::certificates::newton_polygon_certificate;
use arboreal::poly::Trinomial;

fn main() -> arboreal::Result<()> {
    for (d, s, a, b, p) in [(5, 4, 3, 8, 2), (3, 2, 6, -6, 2), (3, 2, 6, -6, 3), (7, 3, 5, 9, 3)] {
        let t = Trinomial::new(d, s, a, b)?;
        let cert = newton_polygon_certificate(&t, p)?;
        let slopes: Vec<&str> = cert.polygon.segments.iter().map(|s| s.slope.as_str()).collect();
        println!("{t} at {p}: certified {} slopes {slopes:?} {:?}", cert.certified, cert.reason);
    }
    Ok(())
}
