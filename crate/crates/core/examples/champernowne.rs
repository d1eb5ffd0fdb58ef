//! The binary Champernowne string and how well a compressor sees through it.

use aif::complexity::{estimate_k_bits, Brotli};
use aif::generators::champernowne;

fn main() {
    println!("n = 20: {}", champernowne(20));
    println!("{:>7} {:>9} {:>9} {:>6}", "n", "bits", "K upper", "ratio");
    for k in [8, 10, 12, 14, 16, 18] {
        let s = champernowne(1 << k);
        let est = estimate_k_bits(&s, &Brotli);
        println!("{:>7} {:>9} {:>9} {:>6.3}", 1u64 << k, s.len(), est.bits, est.bits as f64 / s.len() as f64);
    }
}
