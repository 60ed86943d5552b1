use std::path::PathBuf;
use std::process::{Command, Output};

fn repo(path: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    root.join(path).to_string_lossy().into_owned()
}

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("klr-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let o = klr(&["validate", "--config", &repo("configs/b2.toml")]);
    assert_eq!(o.status.code(), Some(0));

    let odd = scratch("odd.toml", "[cartan]\nvertices = [\"i\"]\npairing = [[3]]\n");
    let o = klr(&["validate", "--config", &odd]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("OddDiagonal"));

    let bad = scratch("bad.toml", "[cartan\nvertices = ");
    assert_eq!(klr(&["validate", "--config", &bad]).status.code(), Some(2));
    assert_eq!(klr(&["validate"]).status.code(), Some(2));
    assert_eq!(klr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn normal_forms_and_products() {
    let b2 = repo("configs/b2.toml");
    let o = klr(&["nf", "bot=i,j; atoms=c1,c1", "--config", &b2]);
    assert_eq!(stdout(&o), "1 * bot=i,j; atoms=x2\n1 * bot=i,j; atoms=x1^2\n");

    let o = klr(&["nf", "bot=i,j,i; atoms=", "--config", &b2]);
    assert_eq!(stdout(&o), "1 * bot=i,j,i; atoms=\n");

    let o = klr(&["mult", "bot=i,j; atoms=c1", "bot=j,i; atoms=x1", "--config", &b2]);
    assert_eq!(stdout(&o), "0\n");
    let o = klr(&["mult", "bot=j,i; atoms=c1", "bot=i,j; atoms=c1", "--config", &b2]);
    assert_eq!(stdout(&o), "1 * bot=i,j; atoms=x2\n1 * bot=i,j; atoms=x1^2\n");

    let o = klr(&["nf", "bot=i,k; atoms=c1", "--config", &b2]);
    assert_eq!(o.status.code(), Some(2));
    let o = klr(&["nf", "bot=i,j; atoms=c2", "--config", &b2]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suites_pass_and_are_reproducible() {
    let g2 = repo("configs/g2.toml");
    let o = klr(&["suite", "serre", "--config", &g2]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS serre.iso"));

    let a = repo("configs/a1xa1.toml");
    let o = klr(&["suite", "relations", "--config", &a, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("check_id,status,detail\n"));
    assert!(out.lines().skip(1).all(|l| l.contains(",PASS,")));

    let tri = repo("configs/triangle.toml");
    let run = || klr(&["suite", "tau", "--config", &tri, "--seed", "7"]).stdout;
    let first = run();
    assert_eq!(first, run());
    assert!(String::from_utf8_lossy(&first).starts_with("# suite tau seed 7 trunc 20\n"));

    let o = klr(&["suite", "nilhecke"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pair_table() {
    let b2 = repo("configs/b2.toml");
    let o = klr(&["pair", "--weight", "i", "--trunc", "4", "--config", &b2]);
    assert_eq!(stdout(&o), "s,t,series\ni(1),i(1),1*q^0 + 1*q^2 + 1*q^4 + O(q^5)\n");
    let o = klr(&["pair", "--weight", "j", "--trunc", "8", "--config", &b2]);
    assert!(stdout(&o).contains("j(1),j(1),1*q^0 + 1*q^4 + 1*q^8 + O(q^9)"));
    assert_eq!(klr(&["pair", "--trunc", "0", "--config", &b2]).status.code(), Some(2));
}
