//! A short tour: catalogue entry -> cubic data -> structure report ->
//! certified birational pair -> algebra recovered from the map.
//!
//! Run with `cargo run -p cubic-jordan --example tour`.

use cubic_jordan::catalog::make_named;
use cubic_jordan::cremona::{adjoint_pair, algebra_from_map, certify, CertifyOutcome};
use cubic_jordan::structure::inspect;
use cubic_jordan::Config;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = Config::default();

    // Q[e]/(e^3): rank three, norm x1^3, two-dimensional radical.
    let entry = make_named("C_eps3")?;
    let data = entry.cubic_data(&cfg)?;
    println!("norm          {}", data.norm);
    for (i, q) in data.adjoint.iter().enumerate() {
        println!("adjoint[{i}]    {q}");
    }

    let info = inspect(&entry.algebra, &cfg)?;
    println!("radical dim   {}", info.radical_dim);
    println!("penico dims   {:?}", info.penico_dims);
    println!("ss signature  rank {} / dim {}", info.ss_rank, info.ss_dim);

    // The adjoint is an involutive quadro-quadric Cremona transformation;
    // `certify` re-derives the inverse and the norm from the forms alone.
    let pair = adjoint_pair(&entry.algebra, &data, &cfg)?;
    match certify(&pair.f, &cfg)? {
        CertifyOutcome::Genuine(found) => {
            assert_eq!(found.norm, data.norm);
            println!("certified     genuine, norm recovered exactly");
        }
        other => panic!("expected a genuine pair, got {other:?}"),
    }

    // And the algebra itself is recoverable from the map.
    let recovered = algebra_from_map(&pair, &entry.algebra.unit(), &cfg)?;
    assert_eq!(recovered.algebra, entry.algebra);
    println!("roundtrip     structure constants reproduced");
    Ok(())
}
