//! Codeword length against number length for both codes, with the point
//! where lgstar overtakes bit duplication.

use aif::selfdelim::codec_table;

fn main() {
    let rows = codec_table(4096, 1);
    println!("{:>5} {:>7} {:>7}", "bits", "bitdup", "lgstar");
    for r in rows.iter().filter(|r| r.bits.is_power_of_two() || r.bits < 12) {
        println!("{:>5} {:>7} {:>7}", r.bits, r.dup_len, r.lgstar_len);
    }
    if let Some(l) = rows.iter().filter(|r| r.dup_len < r.lgstar_len).map(|r| r.bits).max() {
        println!("bit duplication is shorter only up to L = {l}");
    }
}
