use stratavol_core::kontsevich::Source;
use stratavol_core::volumes::{embedded_volume_rows, masur_veech_volume};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut pass = 0;
    let mut fail = 0;
    for (spec, vol, completed) in embedded_volume_rows() {
        if spec.dim > 8 {
            continue;
        }
        let t = Instant::now();
        match masur_veech_volume(&spec, Source::Both) {
            Ok(b) => {
                let okc = b.completed == completed;
                let okv = b.vol.as_ref() == Some(&vol);
                if okc && okv {
                    pass += 1;
                    println!("PASS {:14} vol={} completed={} ({:?})", spec.render(), vol, completed, t.elapsed());
                } else {
                    fail += 1;
                    println!(
                        "FAIL {:14} got completed={} vol={:?}, want {} / {}",
                        spec.render(), b.completed, b.vol, completed, vol
                    );
                }
            }
            Err(e) => {
                fail += 1;
                println!("FAIL {:14} error: {e}", spec.render());
            }
        }
    }
    println!("== {pass} pass, {fail} fail, total {:?}", t0.elapsed());
}
