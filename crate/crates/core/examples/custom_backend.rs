//! Registering an extra compression backend. Registration refuses backends
//! that fail to reproduce their input.

use aif::complexity::{estimate_k, Compressed, ComplexityError, Compressor, Registry};

/// Stores bytes as-is after a 32-bit length: costs 32 + 8n bits.
struct Framed;

impl Compressor for Framed {
    fn name(&self) -> &str {
        "framed"
    }

    fn compress(&self, data: &[u8]) -> Compressed {
        let mut payload = (data.len() as u32).to_be_bytes().to_vec();
        payload.extend_from_slice(data);
        Compressed {
            bit_len: 8 * payload.len() as u64,
            payload,
        }
    }

    fn decompress(&self, c: &Compressed) -> Result<Vec<u8>, ComplexityError> {
        Ok(c.payload[4..].to_vec())
    }
}

fn main() {
    let mut registry = Registry::standard();
    registry.register(Box::new(Framed)).expect("lossless");
    let text = b"abracadabra ".repeat(50);
    for name in registry.names() {
        let est = estimate_k(&text, registry.get(name).unwrap());
        println!("{name:>8}: {} bits for {} input bits", est.bits, 8 * text.len());
    }
}
