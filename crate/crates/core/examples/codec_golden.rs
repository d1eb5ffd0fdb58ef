//! Self-delimiting codes for 1200 and a decoded codeword stream.

use aif::bits::BitString;
use aif::selfdelim::{decode_stream, encode, Scheme};
use num_bigint::BigUint;

fn main() {
    let n = BigUint::from(1200u32);
    for scheme in [Scheme::Lgstar, Scheme::Bitdup] {
        let code = encode(scheme, &n);
        println!("{scheme:>6}({n}) = {code} ({} bits)", code.len());
    }

    // Codewords need no separators: the decoder finds each boundary itself.
    let values: Vec<BigUint> = [0u32, 1, 2, 5, 1200, 65535].map(BigUint::from).to_vec();
    let mut stream = BitString::new();
    for v in &values {
        stream.extend_from(&encode(Scheme::Lgstar, v));
    }
    let back = decode_stream(Scheme::Lgstar, &stream).expect("well-formed stream");
    println!("stream {stream}");
    println!("decodes to {back:?}");
    assert_eq!(back, values);
}
