use std::fmt::{self, Write as _};

use art_core::duality::{
    almost_split_sequence, determined_epi, right_almost_split_audit, verify_ar_duality_inj, verify_ar_duality_proj,
    verify_defect_formula, ArContext,
};
use art_core::functors::{defects, ext1};
use art_core::module::decompose::is_indecomposable;
use art_core::module::ShortExactSequence;
use art_core::stable::{
    ar_translate_classical, stable_hom_inj, stable_hom_proj, stable_isomorphism, transpose, transpose_over,
    EndContext, Modulo,
};
use art_core::{hom, Error, Module};

use crate::report::{Record, Report};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tau,
    Transpose,
    Ext,
    StableHom,
    Defect,
    ArSequence,
    DeterminedEpi,
    Verify,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub module: Option<String>,
    pub from: Option<String>,
    pub to: Option<String>,
    pub seq: Option<String>,
    pub verbose: bool,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: unknown names, missing arguments, unsuitable modules.
    Input(String),
    /// A computation could not be completed.
    Compute(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "{s}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ProjectiveEnd | Error::Decomposable(_) => CliError::Input(e.to_string()),
            e => CliError::Compute(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

pub struct Outcome {
    pub text: String,
    pub report: Report,
}

type Res<T> = Result<T, CliError>;

fn dims(m: &Module) -> String {
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(", "))
}

struct Run<'a> {
    ws: &'a Workspace,
    opts: &'a Options,
    out: String,
    report: Report,
}

impl Run<'_> {
    fn say(&mut self, line: impl AsRef<str>) {
        self.out.push_str(line.as_ref());
        self.out.push('\n');
    }

    fn show(&mut self, label: &str, m: &Module) {
        self.say(format!("{label}: dims {}", dims(m)));
        if self.opts.verbose {
            let names: Vec<String> = match self.ws.algebra.quiver() {
                Some(q) => q.arrows.iter().map(|a| a.id.clone()).collect(),
                None => Vec::new(),
            };
            for (k, a) in m.generator_actions().iter().enumerate() {
                let name = names.get(k).cloned().unwrap_or_else(|| format!("g{k}"));
                self.say(format!("    {name} = {a}"));
            }
        }
    }

    fn module(&self, name: &Option<String>, flag: &str) -> Res<(String, Module)> {
        let name = name.as_ref().ok_or_else(|| CliError::Input(format!("this command needs {flag} NAME")))?;
        let m = self.ws.module(name).map_err(CliError::Input)?;
        Ok((name.clone(), m.clone()))
    }

    fn ar(&self, c: &Module) -> Res<ArContext> {
        let ctx = EndContext::with_seed(c, self.opts.seed)?;
        let i = ctx.dual_gamma();
        Ok(ArContext::new(ctx, i)?)
    }

    fn targets(&self) -> Vec<Module> {
        self.ws.modules.iter().map(|(_, m)| m.clone()).collect()
    }

    fn tau_record(&mut self, name: &str, c: &Module, ar: &ArContext) -> Res<()> {
        let classical = ar_translate_classical(c)?;
        let iso = stable_isomorphism(ar.tau(), &classical, Modulo::Injectives, self.opts.seed)?;
        let witness = if iso.is_some() { "stable iso" } else { "none" };
        self.report.push(Record::new(
            format!("tau_C(D End C) ~ D Tr C mod inj, C={name}"),
            ar.tau().dim(),
            classical.dim(),
            iso.is_some(),
            witness,
        ));
        Ok(())
    }

    fn trtr_record(&mut self, name: &str, c: &Module) -> Res<()> {
        let t = transpose(c)?;
        let trtr = transpose_over(&t.tr, c.algebra())?.tr;
        let iso = stable_isomorphism(&trtr, c, Modulo::Projectives, self.opts.seed)?;
        let witness = if iso.is_some() { "stable iso" } else { "none" };
        self.report.push(Record::new(format!("Tr Tr C ~ C mod proj, C={name}"), trtr.dim(), c.dim(), iso.is_some(), witness));
        Ok(())
    }

    fn tau(&mut self) -> Res<()> {
        let (name, c) = self.module(&self.opts.module, "--module")?;
        let ar = self.ar(&c)?;
        let classical = ar_translate_classical(&c)?;
        self.show(&format!("tau {name} = D Tr {name}"), &classical);
        self.show(&format!("tau_C(D End C), C = {name}"), &ar.tau().clone());
        self.tau_record(&name, &c, &ar)
    }

    fn transpose(&mut self) -> Res<()> {
        let (name, c) = self.module(&self.opts.module, "--module")?;
        let t = transpose(&c)?;
        self.show(&format!("Tr {name} (over the opposite algebra)"), &t.tr);
        self.trtr_record(&name, &c)
    }

    fn ext(&mut self) -> Res<()> {
        let (cn, c) = self.module(&self.opts.from, "--from")?;
        let (xn, x) = self.module(&self.opts.to, "--to")?;
        let e = ext1(&c, &x)?;
        self.say(format!("dim Ext^1({cn}, {xn}) = {}", e.dim()));
        if self.opts.verbose {
            for (k, seq) in e.basis_sequences()?.iter().enumerate() {
                self.show(&format!("  middle term of basis class {k}"), seq.middle());
            }
        }
        let dtr = ar_translate_classical(&c)?;
        let s = stable_hom_inj(&x, &dtr)?;
        self.say(format!("dim StableHom_I({xn}, D Tr {cn}) = {}", s.dim()));
        let ar = self.ar(&c)?;
        let r = verify_ar_duality_inj(&ar, &x, &[])?;
        self.report.push(Record::duality(format!("Hom_G(Ext1(C,X),I) ~ StableHom_I(X,tau C), C={cn}, X={xn}"), &r));
        Ok(())
    }

    fn stablehom(&mut self) -> Res<()> {
        let (mn, m) = self.module(&self.opts.from, "--from")?;
        let (nn, n) = self.module(&self.opts.to, "--to")?;
        self.say(format!("dim Hom({mn}, {nn}) = {}", hom(&m, &n)?.dim()));
        let p = stable_hom_proj(&m, &n)?;
        let i = stable_hom_inj(&m, &n)?;
        self.say(format!("dim StableHom_P({mn}, {nn}) = {}", p.dim()));
        self.say(format!("dim StableHom_I({mn}, {nn}) = {}", i.dim()));
        if self.opts.verbose {
            for (k, f) in p.quotient_basis().iter().enumerate() {
                let blocks: Vec<String> = f.blocks().iter().map(|b| b.to_string()).collect();
                self.say(format!("  class {k}: {}", blocks.join(", ")));
            }
        }
        let ar = self.ar(&m)?;
        let r = verify_ar_duality_proj(&ar, &n, &[])?;
        self.report.push(Record::duality(format!("Hom_G(StableHom_P(C,X),I) ~ Ext1(X,tau C), C={mn}, X={nn}"), &r));
        Ok(())
    }

    fn defect(&mut self) -> Res<()> {
        let sname = self.opts.seq.clone().ok_or_else(|| CliError::Input("this command needs --seq NAME".into()))?;
        let seq = self.ws.sequence(&sname).map_err(CliError::Input)?.clone();
        let cs: Vec<(String, Module)> = match &self.opts.module {
            Some(_) => vec![self.module(&self.opts.module, "--module")?],
            None => self.ws.modules.clone(),
        };
        let d = defects(&seq);
        for (name, m) in &cs {
            let ids = d.identities(m)?;
            self.say(format!("{sname}^*({name}) has dim {}, {sname}_*({name}) has dim {}", ids.contra, ids.cov));
            self.report.push(Record::new(
                format!("{sname}^*(M) ~ Ker Ext1(M, phi), M={name}"),
                ids.contra,
                ids.contra_ext,
                ids.contra == ids.contra_ext,
                "dimension",
            ));
            self.report.push(Record::new(
                format!("{sname}_*(M) ~ Coker StableHom_I(phi, M), M={name}"),
                ids.cov,
                ids.cov_stable,
                ids.cov == ids.cov_stable,
                "dimension",
            ));
        }
        for (name, c) in &cs {
            self.defect_record(&sname, &seq, name, c)?;
        }
        Ok(())
    }

    fn defect_record(&mut self, sname: &str, seq: &ShortExactSequence, cname: &str, c: &Module) -> Res<()> {
        let ar = self.ar(c)?;
        let r = verify_defect_formula(&ar, seq)?;
        if self.opts.verbose {
            let parts: Vec<String> = r.intermediate.iter().map(|(n, d)| format!("{n} = {d}")).collect();
            self.say(format!("  {sname} at C={cname}: {}", parts.join(", ")));
        }
        self.report.push(Record::duality(format!("defect formula, seq={sname}, C={cname}"), &r));
        Ok(())
    }

    fn ar_sequence_records(&mut self, name: &str, c: &Module, print: bool) -> Res<()> {
        let a = almost_split_sequence(c)?;
        if print {
            self.say(format!(
                "0 -> {} -> {} -> {} -> 0",
                dims(a.seq.left()),
                dims(a.seq.middle()),
                dims(a.seq.right())
            ));
            let (l, m) = (a.seq.left().clone(), a.seq.middle().clone());
            self.show("tau C", &l);
            self.show("middle term", &m);
            for w in &a.warnings {
                self.say(format!("warning: {w}"));
            }
        }
        let split = a.seq.is_split()?;
        self.report.push(Record::new(format!("almost split sequence is non-split, C={name}"), 1, 1, !split, "Ext class"));
        let left = is_indecomposable(a.seq.left(), self.opts.seed)?;
        self.report.push(Record::new(
            format!("almost split sequence has indecomposable tau C, C={name}"),
            a.seq.left().dim(),
            a.seq.left().dim(),
            left,
            "Fitting",
        ));
        let targets = self.targets();
        let failures = right_almost_split_audit(&a.seq, &targets)?;
        self.report.push(Record::new(
            format!("right almost split over workspace modules, C={name}"),
            targets.len(),
            failures.len(),
            failures.is_empty(),
            format!("{} failures", failures.len()),
        ));
        Ok(())
    }

    fn ar_sequence(&mut self) -> Res<()> {
        let (name, c) = self.module(&self.opts.module, "--module")?;
        self.ar_sequence_records(&name, &c, true)
    }

    fn epi_record(&mut self, cn: &str, c: &Module, xn: &str, x: &Module, print: bool) -> Res<()> {
        let d = determined_epi(c, x)?;
        if print {
            self.show(&format!("X_C (domain of the {cn}-determined epi onto {xn})"), &d.pi.source().clone());
            self.show("tau_C(J)", &d.tau.clone());
            if self.opts.verbose {
                let blocks: Vec<String> = d.pi.blocks().iter().map(|b| b.to_string()).collect();
                self.say(format!("    pi = {}", blocks.join(", ")));
            }
        }
        let audit = d.audit()?;
        let agree = audit.basis.iter().filter(|(a, b)| a == b).count();
        let witness = format!("minimal: {}, subspaces agree: {}", audit.minimal, audit.subspaces_agree);
        self.report.push(Record::new(
            format!("factorization through pi iff stably zero, C={cn}, X={xn}"),
            audit.basis.len(),
            agree,
            audit.passed(),
            witness,
        ));
        Ok(())
    }

    fn determined_epi(&mut self) -> Res<()> {
        let (cn, c) = self.module(&self.opts.from, "--from")?;
        let (xn, x) = self.module(&self.opts.to, "--to")?;
        self.epi_record(&cn, &c, &xn, &x, true)
    }

    fn verify(&mut self) -> Res<()> {
        let cs: Vec<(String, Module)> = match &self.opts.module {
            Some(_) => vec![self.module(&self.opts.module, "--module")?],
            None => self.ws.modules.clone(),
        };
        let all = self.ws.modules.clone();
        let targets = self.targets();
        let mut ext_sequences = Vec::new();
        for (zn, z) in &all {
            for (xn, x) in &all {
                for (k, s) in ext1(z, x)?.basis_sequences()?.into_iter().enumerate() {
                    ext_sequences.push((format!("ext[{zn},{xn}]#{k}"), s));
                }
            }
        }
        for (cn, c) in &cs {
            let ar = self.ar(c)?;
            for (xn, x) in &all {
                let r = verify_ar_duality_inj(&ar, x, &targets)?;
                self.report.push(Record::duality(format!("injective-side duality, C={cn}, X={xn}"), &r));
                let r = verify_ar_duality_proj(&ar, x, &targets)?;
                self.report.push(Record::duality(format!("projective-side duality, C={cn}, X={xn}"), &r));
            }
            self.tau_record(cn, c, &ar)?;
            self.trtr_record(cn, c)?;
            let named = self.ws.sequences.clone();
            for (sn, s) in named.iter().chain(&ext_sequences) {
                self.defect_record(sn, s, cn, c)?;
            }
            if !c.is_projective()? && is_indecomposable(c, self.opts.seed)? {
                self.ar_sequence_records(cn, c, false)?;
            }
            for (xn, x) in &all {
                self.epi_record(cn, c, xn, x, false)?;
            }
        }
        self.say(format!("{} modules, {} sequences", all.len(), self.ws.sequences.len() + ext_sequences.len()));
        Ok(())
    }
}

/// Run one command on a loaded workspace.
pub fn execute(cmd: Command, ws: &Workspace, opts: &Options, echo: Vec<String>) -> Result<Outcome, CliError> {
    let mut run = Run { ws, opts, out: String::new(), report: Report::new(echo) };
    match cmd {
        Command::Tau => run.tau()?,
        Command::Transpose => run.transpose()?,
        Command::Ext => run.ext()?,
        Command::StableHom => run.stablehom()?,
        Command::Defect => run.defect()?,
        Command::ArSequence => run.ar_sequence()?,
        Command::DeterminedEpi => run.determined_epi()?,
        Command::Verify => run.verify()?,
    }
    let _ = write!(run.out, "{}", run.report.table());
    Ok(Outcome { text: run.out, report: run.report })
}
