//! The certificate catalog: shipped certificates check, corrupted ones are
//! rejected, and a non-anodyne map is refuted by a test fibration.

use marked_sset::anodyne::{boundary_inclusion, check_certificate, corrupted_certificates, rlp_refute, shipped_certificates, AnodyneClass, Certificate};
use marked_sset::error::Result;

fn main() -> Result<()> {
  let d = 4;
  for (name, cert, target) in shipped_certificates(d)? {
    let v = check_certificate(&cert, Some(&target));
    let back = Certificate::from_json(&cert.to_json())?;
    println!("{name} [{}]: valid {}, {} nodes, JSON round trip valid {}", cert.class.name(), v.valid, cert.node_count(), check_certificate(&back, Some(&target)).valid);
  }
  for (name, cert) in corrupted_certificates(7)? {
    let v = check_certificate(&cert, None);
    println!("corrupted {name}: valid {}, reason {}", v.valid, v.reason.unwrap_or_default());
  }
  let r = rlp_refute(&boundary_inclusion(1), AnodyneClass::Right, d)?;
  println!("∂Δ¹ → Δ¹ right anodyne refuted: {}", r.is_refuted());
  Ok(())
}
