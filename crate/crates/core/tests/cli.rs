use std::path::{Path, PathBuf};
use std::process::Command;

use palab::algebra::{power, FiniteAlgebra};
use palab::checks::check_rc_i;
use palab::{fixtures, FiniteTopology, Limits};
use tempfile::TempDir;

fn palab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_palab"))
        .args(args)
        .env_remove("PALAB_WORKERS")
        .env_remove("PALAB_TOPOLOGY_S_MAX")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, value: &impl serde::Serialize) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, serde_json::to_string(value).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

struct Files {
    _dir: TempDir,
    e45: String,
    l3: String,
    disc2: String,
    indisc2: String,
    disc3: String,
    root: PathBuf,
}

fn files() -> Files {
    let dir = TempDir::new().unwrap();
    let root = dir.path().to_path_buf();
    Files {
        e45: write(&root, "E45.json", &fixtures::e45()),
        l3: write(&root, "L3.json", &fixtures::l3()),
        disc2: write(&root, "disc2.json", &fixtures::disc(2)),
        indisc2: write(&root, "indisc2.json", &fixtures::indisc(2)),
        disc3: write(&root, "disc3.json", &fixtures::disc(3)),
        root,
        _dir: dir,
    }
}

#[test]
fn verify_exit_codes() {
    let f = files();
    let (code, out, _) = palab(&["verify", &f.e45, "--checks", "protomodular,rc-i"]);
    assert_eq!(code, 0);
    assert_eq!(out, "protomodular: holds\nrc-i: holds\n");

    let (code, out, _) = palab(&["verify", &f.l3, "--checks", "rc-i"]);
    assert_eq!(code, 1);
    assert!(out.contains("(3.1) fails for i=1 at (0,1,0,2): 1 != 2"), "{out}");
    assert!(out.contains(r#"{"identity":"(3.1)","index":1,"tuple":[0,1,0,2],"lhs":1,"rhs":2}"#));

    let (code, out, _) = palab(&["--json", "verify", &f.l3, "--checks", "rc-i"]);
    assert_eq!(code, 1);
    assert_eq!(
        out.trim(),
        r#"[{"check":"rc-i","holds":false,"counterexample":{"identity":"(3.1)","index":1,"tuple":[0,1,0,2],"lhs":1,"rhs":2}}]"#
    );

    let garbage = f.root.join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(palab(&["verify", garbage.to_str().unwrap()]).0, 2);
    assert_eq!(palab(&["verify", "/nonexistent/file.json"]).0, 2);
    assert_eq!(palab(&["verify", &f.e45, "--checks", "bogus"]).0, 2);
    assert_eq!(palab(&["verify", &f.e45, "--frobnicate"]).0, 2);
}

#[test]
fn verify_runs_every_named_check_on_e45() {
    let f = files();
    let (code, out, err) = palab(&[
        "verify",
        &f.e45,
        "--checks",
        "protomodular,rc-i,rc-ii,rc-iii,rc-iv,rc-v,lemma31,abc,derive-ti",
    ]);
    assert_eq!(code, 0, "{out}{err}");
    assert_eq!(out.lines().count(), 12);
    assert_eq!(palab(&["verify", &f.e45, "--checks", "2-assoc"]).0, 1);
    assert_eq!(palab(&["verify", &f.e45, "--checks", "group"]).0, 2);
    let g2 = write(&f.root, "G2.json", &fixtures::g2());
    assert_eq!(palab(&["verify", &g2, "--checks", "group,right-identity"]).0, 0);
}

#[test]
fn topologies_command() {
    let f = files();
    let (code, out, _) = palab(&["topologies", &f.e45]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 compatible topologies\n"));
    assert!(out.contains("[[],[0,1]]") && out.contains("[[],[0],[0,1],[1]]"));

    let (code, out, _) = palab(&["topologies", &f.e45, "--theorem42", "--lemma41"]);
    assert_eq!(code, 0);
    assert!(out.contains("theorem-4.2: holds") && out.contains("lemma-4.1: holds"));

    let (_, out, _) = palab(&["topologies", &f.e45, "--list", "--axiom", "t0"]);
    let listed: Vec<FiniteTopology> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(listed, vec![fixtures::disc(2)]);

    let big = FiniteAlgebra::new(9, 1, vec![0; 81], vec![vec![0; 81]], vec![0]).unwrap();
    let big = write(&f.root, "big.json", &big);
    let (code, _, err) = palab(&["topologies", &big]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds limit"), "{err}");
}

#[test]
fn topology_cap_from_environment() {
    let f = files();
    let sq = write(&f.root, "sq.json", &power(&fixtures::e45(), 2, &Limits::default()).unwrap());
    let out = Command::new(env!("CARGO_BIN_EXE_palab"))
        .args(["topologies", &sq])
        .env("PALAB_TOPOLOGY_S_MAX", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(palab(&["topologies", &sq, "--topology-s-max", "0"]).0, 2);
    assert_eq!(palab(&["topologies", &sq]).0, 0);
}

#[test]
fn uniformity_command() {
    let f = files();
    let (code, out, _) = palab(&["uniformity", &f.e45, &f.disc2]);
    assert_eq!(code, 0, "{out}");
    for line in ["C1: holds", "C2: holds", "C3: holds", "C4: holds", "lemma-4.4: holds"] {
        assert!(out.contains(line), "{out}");
    }
    let (code, out, _) = palab(&["uniformity", &f.e45, &f.indisc2]);
    assert_eq!(code, 1);
    assert!(out.contains("C4: FAILS"), "{out}");
    let (code, _, err) = palab(&["uniformity", &f.l3, &f.disc3]);
    assert_eq!(code, 1);
    assert!(err.contains("rc-i"), "{err}");
    assert_eq!(palab(&["uniformity", &f.e45, &f.disc3]).0, 2);
    assert_eq!(palab(&["uniformity", &f.e45, &f.disc2, "--base", "minimal"]).0, 0);
}

#[test]
fn search_command_and_catalog() {
    let f = files();
    let (code, out, _) = palab(&["search", "--s", "2", "--n", "1", "--filter", "protomodular"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 results"), "{out}");

    let catalog = f.root.join("catalog.jsonl");
    let (code, _, _) = palab(&[
        "search",
        "--s",
        "2",
        "--n",
        "2",
        "--filter",
        "protomodular,rc-i",
        "--dedup",
        "--out",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&catalog).unwrap();
    for line in text.lines() {
        let entry: palab::search::CatalogEntry = serde_json::from_str(line).unwrap();
        assert!(entry.flags.rc_i);
        assert!(check_rc_i(&entry.algebra().unwrap()).holds);
    }
    assert_eq!(palab(&["search", "--s", "3", "--n", "2", "--filter", "protomodular"]).0, 2);
    assert_eq!(palab(&["search", "--s", "2", "--n", "1", "--filter", "nonsense"]).0, 2);
}

#[test]
fn product_quotient_congruences() {
    let f = files();
    let sq_path = f.root.join("sq.json");
    let (code, _, _) = palab(&["product", &f.e45, "--power", "2", "--out", sq_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let sq: FiniteAlgebra = serde_json::from_str(&std::fs::read_to_string(&sq_path).unwrap()).unwrap();
    assert_eq!(sq.s(), 4);
    assert_eq!(sq, power(&fixtures::e45(), 2, &Limits::default()).unwrap());

    let (code, out, _) = palab(&["congruences", &f.e45]);
    assert_eq!(code, 0);
    assert_eq!(out, "2 congruences\n{\"block_of\":[0,0]}\n{\"block_of\":[0,1]}\n");

    let cong = f.root.join("r.json");
    std::fs::write(&cong, r#"{"block_of":[0,0]}"#).unwrap();
    let (code, out, _) = palab(&["quotient", &f.e45, cong.to_str().unwrap()]);
    assert_eq!(code, 0);
    let q: FiniteAlgebra = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(q.s(), 1);

    std::fs::write(&cong, r#"{"block_of":[0,0,1]}"#).unwrap();
    assert_eq!(palab(&["quotient", &f.l3, cong.to_str().unwrap()]).0, 2);
}

#[test]
fn emitted_files_reparse_and_reverify_identically() {
    let f = files();
    let (_, product, _) = palab(&["product", &f.e45, "--power", "2"]);
    let sq = write(&f.root, "sq.json", &serde_json::from_str::<FiniteAlgebra>(product.trim()).unwrap());
    let checks = "protomodular,rc-i,rc-ii,lemma31";
    let direct = palab(&["--json", "verify", &sq, "--checks", checks]);
    let (_, again, _) = palab(&["product", &sq, "--power", "1"]);
    let again = write(&f.root, "again.json", &serde_json::from_str::<FiniteAlgebra>(again.trim()).unwrap());
    assert_eq!(direct, palab(&["--json", "verify", &again, "--checks", checks]));

    let (_, listed, _) = palab(&["topologies", &sq, "--list"]);
    for (k, line) in listed.lines().enumerate() {
        let t: FiniteTopology = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), line);
        let path = write(&f.root, &format!("t{k}.json"), &t);
        let (code, _, _) = palab(&["uniformity", &sq, &path]);
        assert!(code == 0 || code == 1);
    }
}

#[test]
fn example45_command_passes() {
    let (code, out, _) = palab(&["example45"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("all checks pass\n"));
}

#[test]
fn json_output_is_worker_independent() {
    let f = files();
    let run = |w: &str| palab(&["--json", "--workers", w, "verify", &f.l3, "--checks", "protomodular,rc-i,rc-iv,lemma31"]);
    assert_eq!(run("1"), run("2"));
    assert_eq!(run("1"), run("8"));
    assert_eq!(palab(&["--workers", "0", "verify", &f.e45]).0, 2);
}
