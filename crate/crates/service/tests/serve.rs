//! `kgsu serve` over a real socket.

mod common;

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::process::{Command, Stdio};

use serde_json::Value;

#[test]
fn serve_answers_health_over_tcp() {
    let tmp = tempfile::TempDir::new().unwrap();
    let data = tmp.path().join("data");
    let fx = |rel: &str| common::fixtures().join(rel);
    let status = Command::new(env!("CARGO_BIN_EXE_kgsu"))
        .arg("--data-dir")
        .arg(&data)
        .args(["map", "--mapping"])
        .arg(fx("mapping.ttl"))
        .arg("--tables")
        .arg(fx("tables"))
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());

    let mut child = Command::new(env!("CARGO_BIN_EXE_kgsu"))
        .arg("--data-dir")
        .arg(&data)
        .args(["serve", "--port", "0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut banner = String::new();
    BufReader::new(child.stderr.take().unwrap())
        .read_line(&mut banner)
        .unwrap();
    let addr = banner
        .trim()
        .strip_prefix("listening on http://")
        .unwrap_or_else(|| panic!("{banner}"))
        .to_string();

    let mut stream = TcpStream::connect(&addr).unwrap();
    write!(
        stream,
        "GET /health HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n"
    )
    .unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();

    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    let body = response.split("\r\n\r\n").nth(1).unwrap();
    let v: Value = serde_json::from_str(body).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["quads"].as_u64().unwrap() as usize, common::fixture_dataset().len());
}
