//! One function per verb: parse inputs, call the library, format CSV.

use std::fmt::Write as _;
use std::fs;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use diagram_core::diagram::io::{parse_diagram, to_dot, write_diagram};
use diagram_core::diagram::random::random_diagram_with_cancellation;
use diagram_core::embedding::{phi, sq_dist};
use diagram_core::thompson::{f_group, signed_product, skew_family, word_to_element, FWord};
use diagram_core::universal::{random_u_diagram, u_rewrite_diagram, u_word_to_element, URewrite};
use diagram_core::wreath::{
    ball, compression_fit, parr_length, parr_length_z, parse_element, parse_word, render_z_element,
    signed_support_product, xn_family, Ball, BallWalker, CayleyMetric, Integers, Wreath, DEFAULT_DP_CAP,
};
use diagram_core::zwrz::{propb_report, w_group, zwrz, zwrz_to_diagram};
use diagram_core::{cnd_form, dist_d, presets, Diagram, GroupElement, GroupOracle, Presentation, WreathElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Base, Cli, Command, FCommand, Global, GroupName, Preset, UCommand, WreathCommand, ZwrzCommand};

/// A self test reported FAIL.
#[derive(Debug)]
pub struct CheckFailed(pub usize);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} self test check(s) failed", self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn presentation(p: Preset) -> Arc<Presentation> {
    match p {
        Preset::F => presets::f(),
        Preset::U => presets::u(),
        Preset::W => presets::w(),
        Preset::Z3 => presets::z3(),
    }
}

fn read_diagram(p: Preset, path: &str) -> Result<Diagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    parse_diagram(presentation(p), &text).with_context(|| format!("parsing {path}"))
}

/// `@path` names a diagram file. Otherwise the text is a word in the
/// preset's generators: `x0 x1^-1` for F and U, a `Z wr Z` word such as
/// `t a t^-1` or a `b=..; phi=..` spec for W.
fn element(g: &Global, spec: &str) -> Result<GroupElement> {
    if let Some(path) = spec.strip_prefix('@') {
        return Ok(GroupElement::from_diagram(&read_diagram(g.preset, path)?)?);
    }
    Ok(match g.preset {
        Preset::F => word_to_element(&spec.parse::<FWord>()?)?,
        Preset::U => u_word_to_element(&spec.parse::<FWord>()?)?,
        Preset::W => zwrz_to_diagram(&zwrz_element(spec)?),
        Preset::Z3 => bail!("z3 elements must be given as @file"),
    })
}

fn zwrz_element(spec: &str) -> Result<WreathElement<i64>> {
    let z = zwrz();
    Ok(if spec.contains('=') {
        parse_element(&z, spec)?
    } else {
        parse_word(&z, spec)?
    })
}

fn diagram_arg(g: &Global, spec: &str) -> Result<Diagram> {
    match spec.strip_prefix('@') {
        Some(path) => read_diagram(g.preset, path),
        None => Ok(element(g, spec)?.into_diagram()),
    }
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn signs_text(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s < 0 { '-' } else { '+' }).collect()
}

fn random_signs(rng: &mut ChaCha8Rng, len: usize) -> Vec<i8> {
    (0..len).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

fn sign_vectors(spec: &str, len: usize, seed: u64) -> Result<Vec<Vec<i8>>> {
    if spec == "all" {
        if len > 16 {
            bail!(diagram_core::Error::CapExceeded(format!("2^{len} sign vectors")));
        }
        return Ok((0..1u64 << len)
            .map(|bits| (0..len).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect());
    }
    if let Some(k) = spec.strip_prefix("random:") {
        let k: usize = k.parse().with_context(|| format!("bad count in `{spec}`"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok((0..k).map(|_| random_signs(&mut rng, len)).collect());
    }
    let signs = spec
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => bail!("bad sign `{c}` in `{spec}`"),
        })
        .collect::<Result<Vec<i8>>>()?;
    if signs.len() != len {
        bail!(diagram_core::Error::LengthMismatch {
            expected: len,
            got: signs.len()
        });
    }
    Ok(vec![signs])
}

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    let cap = g.max_ball as usize;
    match &cli.command {
        Command::Reduce { input } => {
            let d = read_diagram(g.preset, &input.to_string_lossy())?;
            let r = d.reduce();
            eprintln!("cells_before,cells_after\n{},{}", d.cell_count(), r.cell_count());
            emit(g, &write_diagram(&r))
        }
        Command::Mul { elements } => {
            let mut acc = element(g, &elements[0])?;
            for e in &elements[1..] {
                acc = acc.multiply(&element(g, e)?)?;
            }
            eprintln!("cells: {}", acc.cell_count());
            emit(g, &write_diagram(acc.diagram()))
        }
        Command::Dist { a, b } => {
            let (x, y) = (element(g, a)?, element(g, b)?);
            emit(
                g,
                &format!("dist_d,sq_dist\n{},{}\n", dist_d(&x, &y)?, sq_dist(&x, &y)?),
            )
        }
        Command::Embed { element: spec } => {
            let x = element(g, spec)?;
            let mut out = String::from("index,address\n");
            for (i, a) in phi(&x).0.iter().enumerate() {
                writeln!(out, "{i},{}", csv_field(&a.0.to_string()))?;
            }
            emit(g, &out)
        }
        Command::F(FCommand::Skew { n, signs, lengths }) => {
            let fam = skew_family(*n)?;
            let member_cells = fam.members.first().map_or(0, GroupElement::cell_count);
            let expected = 3 * (1usize << (n + 1)) - 2;
            let products = sign_vectors(signs, fam.members.len(), g.seed)?
                .into_iter()
                .map(|s| Ok((signed_product(&fam, &s)?, s)))
                .collect::<Result<Vec<_>>>()?;
            let f = f_group();
            let mut walker = BallWalker::new(&f, cap);
            if *lengths {
                while products.iter().any(|(p, _)| !walker.ball().lengths.contains_key(p)) && walker.grow().is_ok() {}
            }
            let mut out = String::from("n,signs,member_cells,product_cells,expected_cells");
            out.push_str(if *lengths { ",word_length\n" } else { "\n" });
            for (p, s) in &products {
                write!(
                    out,
                    "{n},{},{member_cells},{},{expected}",
                    signs_text(s),
                    p.cell_count()
                )?;
                if *lengths {
                    let b = walker.ball();
                    match b.lengths.get(p) {
                        Some(l) => write!(out, ",{l}")?,
                        None => write!(out, ",>{}", b.layers.len() - 2)?,
                    }
                }
                out.push('\n');
            }
            emit(g, &out)
        }
        Command::F(FCommand::Ball { radius }) => {
            let b = ball(&f_group(), *radius, cap)?;
            let mut out = String::from("length,cells\n");
            let mut samples = Vec::new();
            for (x, l) in b.elements() {
                writeln!(out, "{l},{}", x.cell_count())?;
                if l > 1 {
                    samples.push((l as f64, (x.cell_count() as f64).sqrt()));
                }
            }
            let (up, down) = ratio_maxima(b.elements().map(|(x, l)| (l, x.cell_count())));
            eprintln!(
                "elements {}, max cells/length {up:.4}, max length/cells {down:.4}",
                b.len()
            );
            if let Ok(fit) = compression_fit(&samples) {
                eprintln!("compression slope {:.4}, residual {:.4}", fit.slope, fit.residual);
            }
            emit(g, &out)
        }
        Command::U(UCommand::Rewrite { element: spec, random }) => {
            let mut out = String::from("cells,k,m,r,s1,s2,length,bound,bounds_hold,word\n");
            let mut row = |rw: &URewrite| {
                let (d, r) = (&rw.decomposition, &rw.report);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    d.k,
                    d.m,
                    r.r,
                    r.s1,
                    r.s2,
                    r.len(),
                    r.bound(),
                    rw.bounds_hold(),
                    csv_field(&r.word.to_string())
                )
            };
            match (spec, random) {
                (Some(spec), None) => {
                    let u_globals = Global {
                        preset: Preset::U,
                        ..g.clone()
                    };
                    row(&u_rewrite_diagram(&diagram_arg(&u_globals, spec)?)?)?;
                }
                (None, Some(k)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    for _ in 0..*k {
                        row(&u_rewrite_diagram(&random_u_diagram(&mut rng, g.max_cells as usize))?)?;
                    }
                }
                _ => bail!("give exactly one of an element and --random"),
            }
            emit(g, &out)
        }
        Command::Wreath(WreathCommand::Len { h, elements }) => {
            let mut out = String::from("element,length\n");
            for spec in elements {
                let l = match h {
                    Base::Z => parr_length_z(&zwrz_element(spec)?) as usize,
                    Base::Zwrz => {
                        let w = Wreath::new(zwrz());
                        let e = if spec.contains('=') {
                            parse_element(&w, spec)?
                        } else {
                            parse_word(&w, spec)?
                        };
                        let mut metric = CayleyMetric::new(&w.h, cap);
                        parr_length(&w, &e, &mut metric, DEFAULT_DP_CAP)?
                    }
                };
                writeln!(out, "{},{l}", csv_field(spec))?;
            }
            emit(g, &out)
        }
        Command::Wreath(WreathCommand::Wr2 { h, n, products }) => {
            let text = match h {
                Base::Z => wr2(
                    &zwrz(),
                    *n,
                    *products,
                    g,
                    cap,
                    |b| b.to_string(),
                    |e, _| Ok(parr_length_z(e) as usize),
                )?,
                Base::Zwrz => {
                    let w = Wreath::new(zwrz());
                    let mut metric = CayleyMetric::new(&w.h, cap);
                    wr2(&w, *n, *products, g, cap, render_z_element, |e, w| {
                        Ok(parr_length(w, e, &mut metric, DEFAULT_DP_CAP)?)
                    })?
                }
            };
            emit(g, &text)
        }
        Command::Growth { group, radius } => {
            let sizes = match group {
                GroupName::F => ball(&f_group(), *radius, cap)?.growth(),
                GroupName::Z => ball(&Integers, *radius, cap)?.growth(),
                GroupName::Zwrz => ball(&zwrz(), *radius, cap)?.growth(),
                GroupName::W => ball(&w_group(), *radius, cap)?.growth(),
            };
            let mut out = String::from("radius,sphere,ball\n");
            let mut prev = 0;
            for (r, &s) in sizes.iter().enumerate() {
                writeln!(out, "{r},{},{s}", s - prev)?;
                prev = s;
            }
            emit(g, &out)
        }
        Command::Zwrz(ZwrzCommand::Embed { elements }) => {
            let mut out = String::from("element,length,cells,addresses\n");
            for spec in elements {
                let e = zwrz_element(spec)?;
                let img = zwrz_to_diagram(&e);
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_field(&render_z_element(&e)),
                    parr_length_z(&e),
                    img.cell_count(),
                    phi(&img).len()
                )?;
            }
            emit(g, &out)
        }
        Command::Zwrz(ZwrzCommand::Propb { radius }) => {
            let r = propb_report(*radius, cap)?;
            let mut out = String::from("element,length,cells\n");
            for row in &r.rows {
                writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&render_z_element(&row.element)),
                    row.length,
                    row.cells
                )?;
            }
            eprintln!(
                "elements {}, max cells/length {:.4}, max length/cells {:.4}",
                r.rows.len(),
                r.max_cells_per_length,
                r.max_length_per_cells
            );
            emit(g, &out)
        }
        Command::ExportDot { element: spec } => emit(g, &to_dot(&diagram_arg(g, spec)?)),
        Command::Selftest => selftest(g),
    }
}

fn ratio_maxima(rows: impl Iterator<Item = (usize, usize)>) -> (f64, f64) {
    rows.filter(|&(l, _)| l > 0).fold((0.0, 0.0), |(up, down), (l, c)| {
        (f64::max(up, c as f64 / l as f64), f64::max(down, l as f64 / c as f64))
    })
}

fn wr2<H, R, L>(
    w: &Wreath<H>,
    n: usize,
    products: Option<usize>,
    g: &Global,
    cap: usize,
    render: R,
    mut len: L,
) -> Result<String>
where
    H: GroupOracle,
    R: Fn(&H::Elem) -> String,
    L: FnMut(&WreathElement<H::Elem>, &Wreath<H>) -> Result<usize>,
{
    let fam = xn_family(w, n, cap)?;
    let mut out = String::new();
    match products {
        None => {
            out.push_str("b,len_b,w_length,lower,upper\n");
            for m in &fam {
                let l = len(&m.w, w)?;
                writeln!(
                    out,
                    "{},{},{l},{},{}",
                    csv_field(&render(&m.b)),
                    m.len_b,
                    2 * n + 1,
                    3 * n + 1
                )?;
            }
        }
        Some(k) => {
            out.push_str("signs,length,threshold\n");
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            for _ in 0..k {
                let s = random_signs(&mut rng, fam.len());
                let l = len(&signed_support_product(w, &fam, &s)?, w)?;
                writeln!(out, "{},{l},{}", signs_text(&s), n * fam.len())?;
            }
        }
    }
    Ok(out)
}

fn selftest(g: &Global) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut checks: Vec<(&str, bool)> = Vec::new();

    let mut confluent = true;
    for i in 0..300 {
        let p = [presets::f(), presets::u(), presets::w()][i % 3].clone();
        let top = p.base().expect("preset base").clone();
        let d = random_diagram_with_cancellation(&p, &top, rng.gen_range(0..=30), 0.4, &mut rng);
        confluent &= d.reduce_randomly(&mut rng) == d.reduce();
    }
    checks.push(("confluence", confluent));

    let f_elem = |rng: &mut ChaCha8Rng| {
        let w = FWord(
            (0..rng.gen_range(0..=8))
                .map(|_| (rng.gen_range(0..2), if rng.gen_bool(0.5) { 1 } else { -1 }))
                .collect(),
        );
        word_to_element(&w)
    };
    let mut isometric = true;
    let mut cnd = true;
    for _ in 0..100 {
        let (a, b) = (f_elem(&mut rng)?, f_elem(&mut rng)?);
        isometric &= sq_dist(&a, &b)? == dist_d(&a, &b)?;
        let c = f_elem(&mut rng)?;
        cnd &= cnd_form(&[a, b, c], &[1, 1, -2])? <= 0;
    }
    checks.push(("isometry-squared identity", isometric));
    checks.push(("conditional negative definiteness", cnd));

    let mut skew = true;
    for n in 0..=3 {
        let fam = skew_family(n)?;
        skew &= fam.members.iter().all(|m| m.cell_count() == 2 * n + 4);
        let s = random_signs(&mut rng, fam.members.len());
        skew &= signed_product(&fam, &s)?.cell_count() == 3 * (1 << (n + 1)) - 2;
    }
    checks.push(("skew families", skew));

    let mut rewrite = true;
    for _ in 0..50 {
        let d = random_u_diagram(&mut rng, g.max_cells as usize);
        let rw = u_rewrite_diagram(&d)?;
        rewrite &= rw.bounds_hold() && u_word_to_element(&rw.report.word)? == GroupElement::from_diagram(&d)?;
    }
    checks.push(("U rewriting", rewrite));

    let z = zwrz();
    let b: Ball<WreathElement<i64>> = ball(&z, 5, g.max_ball as usize)?;
    let mut metric = CayleyMetric::new(&Integers, 1000);
    let mut parr = true;
    for (e, r) in b.elements() {
        parr &= parr_length_z(e) as usize == r && parr_length(&z, e, &mut metric, DEFAULT_DP_CAP)? == r;
    }
    checks.push(("wreath length oracles", parr));

    let mut wr2_ok = true;
    for n in 1..=3 {
        for m in xn_family(&z, n, 1000)? {
            let l = parr_length_z(&m.w) as usize;
            wr2_ok &= (2 * n + 1..=3 * n + 1).contains(&l);
        }
    }
    checks.push(("X_n families", wr2_ok));

    let mut out = String::new();
    for (name, ok) in &checks {
        writeln!(out, "{name}: {}", if *ok { "PASS" } else { "FAIL" })?;
    }
    emit(g, &out)?;
    let failed = checks.iter().filter(|c| !c.1).count();
    if failed > 0 {
        return Err(CheckFailed(failed).into());
    }
    Ok(())
}
