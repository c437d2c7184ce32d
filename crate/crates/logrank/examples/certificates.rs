//! Every CLI invocation emits a certificate: the echoed input, the witness,
//! and a transcript of exact checks. `verify` re-derives the transcript
//! from scratch, so tampering with any byte of the witness is caught.

use logrank::cli::execute;
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["logrank"];
    full.extend_from_slice(args);
    let out = execute(full);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn main() {
    let dir = std::env::temp_dir().join("logrank-certificates-example");
    std::fs::create_dir_all(&dir).unwrap();

    // a siegel certificate
    let input = dir.join("matrix.json");
    std::fs::write(
        &input,
        json!({"rows": 1, "cols": 3, "entries": [["1", "2", "-3"]]}).to_string(),
    )
    .unwrap();
    let (code, cert) = run(&["siegel", "--input", input.to_str().unwrap()]);
    println!("siegel exit code: {code}");
    println!("kernel vector:    {}", cert["result"]["b"]);
    println!("checks:           {}", cert["checks"]);

    // write the certificate and verify it in a fresh invocation
    let cert_path = dir.join("siegel.cert.json");
    std::fs::write(&cert_path, cert.to_string()).unwrap();
    let (code, verdict) = run(&["verify", cert_path.to_str().unwrap()]);
    println!("\nverify exit code: {code}");
    println!("verified:         {}", verdict["result"]["verified"]);

    // tamper with the witness: verification fails with exit 1
    let mut bad = cert.clone();
    bad["result"]["b"][0] = json!("99");
    let bad_path = dir.join("tampered.cert.json");
    std::fs::write(&bad_path, bad.to_string()).unwrap();
    let (code, verdict) = run(&["verify", bad_path.to_str().unwrap()]);
    println!("\ntampered certificate: exit {code}, verdict {verdict}");
}
