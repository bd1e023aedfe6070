//! `trigon build`: triples, presentation, polyhedron, links. Triples and
//! presentation are written only once their checks pass; the complex report
//! and link edge lists are written either way so a failing link can be
//! inspected.

use std::fmt::Write as _;
use std::fs;

use trigon::*;

use crate::{
    certification_failure, load_bijection, load_plane, read, write, BuildArgs, CmdResult, Failure,
};

fn stage(name: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Verification(format!("{name}: {msg}"))
}

pub(crate) fn run(args: &BuildArgs) -> CmdResult {
    let word = args
        .word
        .as_deref()
        .map(validate_word)
        .transpose()
        .map_err(|e| Failure::Usage(format!("word: {e}")))?;

    let plane_text = read(&args.plane)?;
    let plane = load_plane(&args.plane)?;
    let report = validate_plane(&plane);
    if let Some(v) = report.violations.first() {
        return Err(stage("plane", v));
    }
    let bij = load_bijection(&args.bijection, &plane)?;
    if let Some(why) = certification_failure(bij.certification()) {
        return Err(stage("bijection", why));
    }

    fs::create_dir_all(&args.output)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.output.display())))?;
    let out = |name: &str| args.output.join(name);
    let mut outputs = Vec::new();
    let mut save = |name: &str, text: String| -> CmdResult {
        write(&out(name), &text)?;
        outputs.push((name.to_string(), text));
        Ok(())
    };

    let triples = enumerate_triples(&plane, &bij).map_err(|e| stage("triples", e))?;
    let lemma = verify_crucial_lemma(&plane, &bij, &triples).map_err(|e| stage("triples", e))?;
    if let Some(f) = lemma.failures.first() {
        return Err(stage("crucial lemma", f));
    }
    save("triples.txt", triples.to_text())?;

    let p = match &word {
        None => build_euclidean(&plane, &bij, &triples),
        Some(w) => build_hyperbolic(&plane, &bij, &triples, w),
    }
    .map_err(|e| stage("presentation", e))?;
    let check = verify_presentation(&p);
    if let Some(v) = check.violations.first() {
        return Err(stage("presentation", v));
    }
    save("presentation.txt", p.to_text())?;

    let complex = analyze(&p, &plane, &bij).map_err(|e| stage("complex", e))?;
    let source = format!("# source: {} {}\n", plane.name(), bij.content_hash());
    save("complex.txt", format!("{source}{}", complex.to_text()))?;
    for l in &complex.links {
        save(
            &format!("link-{}.edges", l.link.vertex),
            format!("{source}{}", l.link.to_edge_list()),
        )?;
    }
    if let Some(why) = complex.first_failure() {
        return Err(stage("complex", why));
    }

    let mut manifest = format!(
        "trigon {} file-format {}\ncommand: {}\n",
        env!("CARGO_PKG_VERSION"),
        FORMAT_VERSION,
        std::env::args().skip(1).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(
        manifest,
        "input plane {} {}",
        args.plane.display(),
        text_hash(&plane_text)
    );
    let _ = writeln!(
        manifest,
        "input bijection {} {}",
        args.bijection.display(),
        bij.content_hash()
    );
    for (name, text) in &outputs {
        let _ = writeln!(manifest, "output {name} {}", text_hash(text));
    }
    write(&out("manifest.txt"), &manifest)?;

    print!("{}", complex.to_text());
    Ok(())
}
