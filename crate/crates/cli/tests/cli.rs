use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pearcey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pearcey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_origin_json() {
    let o = pearcey(&["eval", "--x", "0", "--y", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["x", "y", "value", "method", "terms", "error_estimate", "warnings"]);
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 0.906_402_477_055_477_07).abs() < 1e-15);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn json_numbers_carry_seventeen_digits() {
    let o = pearcey(&["eval", "--x", "1", "--y", "i", "--json"]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let re = v["value"][0].to_string();
    let mantissa = re.split(['e', 'E']).next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{re}");
}

#[test]
fn eval_text_uses_six_significant_digits() {
    let o = pearcey(&["eval", "--x", "0", "--y", "0"]);
    assert!(stdout(&o).contains("= 0.906402+0i"), "{}", stdout(&o));
    let o = pearcey(&["eval", "--x", "0", "--y", "0", "--digits", "10"]);
    assert!(stdout(&o).contains("0.9064024771"));
}

#[test]
fn eval_large_x_single_term_matches_table() {
    let o = pearcey(&["eval", "--x", "20", "--y", "1", "--method", "largex", "--terms", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let approx = v["value"][0].as_f64().unwrap();
    let exact = pearcey::oracle_quadrature(
        num_complex::Complex64::new(20.0, 0.0),
        num_complex::Complex64::new(1.0, 0.0),
        &pearcey::OracleConfig::with_digits(30),
    )
    .unwrap()
    .to_complex64()
    .unwrap()
    .re;
    let rel = ((approx - exact) / exact).abs();
    assert!((rel / 0.001766 - 1.0).abs() < 0.02, "{rel}");
    assert_eq!(v["method"], "large_x");
    assert_eq!(v["terms"], 1);
}

#[test]
fn parse_error_names_the_flag() {
    let o = pearcey(&["eval", "--x", "abc", "--y", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--x"));
    assert_eq!(pearcey(&["eval", "--x", "0"]).status.code(), Some(3));
    assert_eq!(pearcey(&["eval", "--x", "0", "--y", "0", "--terms", "2"]).status.code(), Some(3));
}

#[test]
fn region_error_exit_code() {
    let o = pearcey(&["eval", "--x", "-5", "--y", "1", "--method", "largex"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn negative_literals_are_values() {
    let o = pearcey(&["eval", "--x", "-1-2i", "--y", "(0.5,-1)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["x"][1].as_f64(), Some(-2.0));
    assert_eq!(v["y"][1].as_f64(), Some(-1.0));
}

#[test]
fn batch_preserves_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let out = dir.path().join("out.csv");
    std::fs::write(&input, "x,y\n1,i\n0.1-0.125i,-2\n\"(0,0.05)\",2i\n").unwrap();
    let o = pearcey(&["batch", path(&input), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["x", "y", "value_re", "value_im", "method", "terms", "error_estimate", "warning_count", "error"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][0], "1.0+0.0i");
    assert_eq!(&rows[1][0], "0.1-0.125i");
    assert_eq!(&rows[2][0], "0.0+0.05i");
    let p = rows[0][2].parse::<f64>().unwrap();
    assert!((p - 0.768_150_421_026_261_686).abs() < 1e-15);
    assert!(rows.iter().all(|r| r[8].is_empty()));
}

#[test]
fn batch_empty_file_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let out = dir.path().join("out.csv");
    std::fs::write(&input, "x,y\n").unwrap();
    let o = pearcey(&["batch", path(&input), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn batch_isolates_failed_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let out = dir.path().join("out.csv");
    std::fs::write(&input, "x,y,method,terms\n1,i,,\n-5,1,largex,2\nnope,0,,\n20,1,largex,1\n").unwrap();
    let o = pearcey(&["batch", path(&input), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&out).unwrap().records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0][8].is_empty() && rows[3][8].is_empty());
    assert_eq!(&rows[3][4], "large_x");
    assert!(rows[1][8].contains("line 3") && rows[1][8].contains("not valid"));
    assert!(rows[2][8].contains("line 4"));
}

#[test]
fn batch_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &input,
        "{\"x\": \"1\", \"y\": \"i\"}\n{\"x\": [20, 0], \"y\": 1, \"method\": \"largex\", \"terms\": 2}\n",
    )
    .unwrap();
    let o = pearcey(&["batch", path(&input), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&out).unwrap().records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][5], "2");
}

#[test]
fn batch_output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let mut text = String::from("x,y\n");
    for k in 0..24 {
        text.push_str(&format!("{}-{}i,{}+{}i\n", 0.7 * k as f64, 0.3 * k as f64, 0.2 * k as f64, 0.1 * k as f64));
    }
    std::fs::write(&input, text).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("out{threads}.csv"));
        let o = Command::new(env!("CARGO_BIN_EXE_pearcey"))
            .args(["batch", path(&input), "-o", path(&out)])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn batch_unreadable_input() {
    assert_eq!(pearcey(&["batch", "/nonexistent/input.csv"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    std::fs::write(&input, "a,b\n1,2\n").unwrap();
    assert_eq!(pearcey(&["batch", path(&input)]).status.code(), Some(3));
}

#[test]
fn table_two_reports_every_cell() {
    let o = pearcey(&["table", "2", "--digits", "40"]);
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count() + text.matches("FAIL").count(), 36 + 1);
    assert!(text.contains("(30i, -i)"));
    let all_pass = !text.lines().any(|l| l.contains(" FAIL"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}

#[test]
fn table_rejects_unknown_number() {
    assert_eq!(pearcey(&["table", "4"]).status.code(), Some(3));
}

#[test]
fn sweep_rows_in_grid_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = pearcey(&["sweep", "--x-grid", "1:100:3", "--y-grid", "1:1:1", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert!(!r.headers().unwrap().iter().any(|h| h == "oracle_error"));
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let xs: Vec<&str> = rows.iter().map(|r| &r[0]).collect();
    assert_eq!(xs, ["1.0+0.0i", "10.0+0.0i", "100.0+0.0i"]);
    assert_eq!(&rows[2][2], "large_x");

    let o = pearcey(&["sweep", "--x-grid", "2:2:1", "--y-grid", "0.5:0.5:1", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv::Reader::from_path(&out).unwrap().records().count(), 1);
}

#[test]
fn sweep_with_oracle_estimates_are_honest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = pearcey(&[
        "sweep", "--x-grid", "0.5:50:4@-1.5:1.5:3", "--y-grid", "0.5:5:2@0:0.5pi:2", "--with-oracle", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_path(&out).unwrap();
    let h = r.headers().unwrap().clone();
    let est = h.iter().position(|c| c == "error_estimate").unwrap();
    let val = (h.iter().position(|c| c == "value_re").unwrap(), h.iter().position(|c| c == "value_im").unwrap());
    let oe = h.iter().position(|c| c == "oracle_error").unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12 * 4);
    let honest = rows
        .iter()
        .filter(|row| {
            let size = row[val.0].parse::<f64>().unwrap().hypot(row[val.1].parse::<f64>().unwrap());
            let rel_est = row[est].parse::<f64>().map_or(f64::EPSILON, |e| e / size);
            row[oe].parse::<f64>().unwrap() <= 10.0 * rel_est
        })
        .count();
    assert!(honest * 10 >= rows.len() * 9, "{honest} of {}", rows.len());
}

#[test]
fn sweep_bad_grid() {
    assert_eq!(pearcey(&["sweep", "--x-grid", "1:2", "--y-grid", "1:1:1"]).status.code(), Some(3));
    assert_eq!(pearcey(&["sweep", "--x-grid", "1:2:0", "--y-grid", "1:1:1"]).status.code(), Some(3));
}
