//! The text formats: canonical instance and certificate documents that
//! parse back to exactly what was written, byte for byte.

use rainbow_matroid::fileio::{
    read_instance, write_certificate, write_instance, CertificateFile, InstanceFile,
};
use rainbow_matroid::instances::k4_star_pairs_instance;
use rainbow_matroid::solver::{solve_rstkf, SearchConfig, SolveOutcome};

fn main() {
    let inst = k4_star_pairs_instance();
    let file = InstanceFile::Rstkf {
        graph: inst.graph().clone(),
        partition: inst.partition().clone(),
        k: inst.k(),
    };

    // Documents are sorted `key = value` lines behind a format magic.
    let text = file.to_text();
    println!("--- instance document ---");
    print!("{text}");

    // Writing, reading back, and re-rendering reproduces the bytes.
    let dir = std::env::temp_dir().join("rainbow-matroid-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("star.rmi");
    write_instance(&path, &file).unwrap();
    let back = read_instance(&path).unwrap();
    assert_eq!(back.to_text(), text);
    println!("--- reparsed identically from {} ---", path.display());

    // Certificates use the same shape.
    let cfg = SearchConfig::default();
    let SolveOutcome::Found(trees) = solve_rstkf(inst.graph(), inst.partition(), 2, &cfg).unwrap()
    else {
        panic!("the star pairing admits a factorization");
    };
    let cert = CertificateFile::Trees(trees);
    println!("--- certificate document ---");
    print!("{}", cert.to_text());
    write_certificate(&dir.join("star.rmc"), &cert).unwrap();

    // Malformed input is rejected with the offending line number.
    let broken = text.replace("edge e3 = v1 v2", "edge e3 = v1");
    match InstanceFile::parse(&broken) {
        Err(e) => println!("--- parse error example ---\n{e}"),
        Ok(_) => panic!("a one-endpoint edge must not parse"),
    }
}
