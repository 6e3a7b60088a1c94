//! Self-checking replays of the two worked examples: a `p = 11` code with
//! the standard derivation (one two-error word decoded directly, one
//! three-error word that needs the full position search) and a `p = 5`
//! code with `delta(z) = z`.
//!
//! Every golden object below is embedded as text in the matrix format
//! (`; ` between entries, newline between rows) and compared exactly.

use diffconv::pgz::{decode_basic_traced, decode_traced, DecodeTrace};
use diffconv::sim::inject_errors;
use diffconv::{llcm_all, BasicOutcome, CodeSpec, Decoded, FunMatrix, Message, OrePoly, ParseMode, Prime, RatFun};

use crate::error::{CliError, CliResult};

mod p11 {
    pub const G: &str = "5/z^6; 8/z^5; 10/z^4; 2/z^3; 10/z^2; 3/z; 1";
    pub const N: &str = "\
1; 1; 1; 1; 1; 1; 1; 1; 1; 1; 1
10/z; 9/z; 8/z; 7/z; 6/z; 5/z; 4/z; 3/z; 2/z; 1/z; 0
2/z^2; 6/z^2; 1/z^2; 9/z^2; 8/z^2; 9/z^2; 1/z^2; 6/z^2; 2/z^2; 0; 0
5/z^3; 9/z^3; 6/z^3; 1/z^3; 10/z^3; 5/z^3; 2/z^3; 6/z^3; 0; 0; 0
2/z^4; 10/z^4; 8/z^4; 4/z^4; 8/z^4; 10/z^4; 2/z^4; 0; 0; 0; 0
1/z^5; 6/z^5; 10/z^5; 1/z^5; 5/z^5; 10/z^5; 0; 0; 0; 0; 0
5/z^6; 2/z^6; 8/z^6; 2/z^6; 5/z^6; 0; 0; 0; 0; 0; 0
9/z^7; 6/z^7; 5/z^7; 2/z^7; 0; 0; 0; 0; 0; 0; 0
5/z^8; 1/z^8; 5/z^8; 0; 0; 0; 0; 0; 0; 0; 0
10/z^9; 1/z^9; 0; 0; 0; 0; 0; 0; 0; 0; 0
10/z^10; 0; 0; 0; 0; 0; 0; 0; 0; 0; 0";
    pub const MESSAGE: &str = "1; z; 0; 0; z^4";
    pub const CODEWORD: &str = "3/z^6; 5/z^5; 3/z^4; 7/z^3; 8/z^2; 5/z; 3; 3*z; 9*z^2; 3*z^3; z^4";

    pub const TWO_POSITIONS: [usize; 2] = [6, 8];
    pub const TWO_VALUES: &str = "8; 2*z^2";
    pub const TWO_RECEIVED: &str = "3/z^6; 5/z^5; 3/z^4; 7/z^3; 8/z^2; 5/z; 0; 3*z; 0; 3*z^3; z^4";
    pub const TWO_TABLE: &str = "\
6/z^7; 9/z^8; 9/z^9
4/z^8; 7/z^9; 7/z^10
5/z^9; 7/z^10; 7/z^11
3/z^10; 0; 0";
    pub const TWO_RCEF: &str = "\
1; 0; 0
0; 1; 0
3/z^2; 5/z; 0
9/z^3; 1/z^2; 0";
    pub const TWO_RHO: &str = "8/z^2; 6/z; 1";
    pub const TWO_RHO_N: &str = "4/z^2; 2/z^2; 2/z^2; 4/z^2; 8/z^2; 3/z^2; 0; 10/z^2; 0; 3/z^2; 8/z^2";
    pub const TWO_SYSTEM: &str = "\
5/z^7; 9/z^8
5/z^9; 10/z^10";
    pub const TWO_RHS: &str = "6/z^7; 4/z^8";

    pub const THREE_RECEIVED: &str = "3/z^6; (z^5+5)/z^5; 3/z^4; 7/z^3; 8/z^2; 5/z; 0; 3*z; 9*z^2; 0; z^4";
    pub const THREE_RCEF: &str = "\
1; 0; 0
0; 1; 0
(2*z^5+5)/(z^7+7*z^2); (9*z^5+6)/(z^6+7*z); 0
3/z^3; 8/z^2; 0";
    pub const THREE_RHO_N: &str = "\
(9*z^5+4)/(z^7+7*z^2); 5/(z^7+7*z^2); (4*z^5+9)/(z^7+7*z^2); (10*z^5+5)/(z^7+7*z^2); \
(7*z^5+4)/(z^7+7*z^2); (6*z^5+6)/(z^7+7*z^2); 7*z^3/(z^5+7); (10*z^5+8)/(z^7+7*z^2); \
(4*z^5+8)/(z^7+7*z^2); 0; (9*z^5+6)/(z^7+7*z^2)";
    pub const THREE_H_RHO: &str = "\
1; 0; 0; 0; 0; 0; 0; 0; 0; 0; 0
0; 1; 0; 0; 0; 0; 8*z^5; 0; 0; 0; 0
0; 0; 1; 0; 0; 0; 0; 0; 0; 0; 0
0; 0; 0; 1; 0; 0; 0; 0; 0; 0; 0
0; 0; 0; 0; 1; 0; 0; 0; 0; 0; 0
0; 0; 0; 0; 0; 1; 0; 0; 0; 0; 0
0; 0; 0; 0; 0; 0; 0; 1; 0; 0; 0
0; 0; 0; 0; 0; 0; 0; 0; 1; 0; 0
0; 0; 0; 0; 0; 0; 0; 0; 0; 0; 1";
    pub const THREE_SYSTEM: &str = "\
10/z^2; 2/z^3; 5/z^4
5/z^7; 9/z^8; 5/z^9
10/z^10; 10/z^11; 0";
    pub const THREE_RHS: &str = "(10*z^5+10)/z^7; (2*z^5+9)/z^8; (5*z^5+7)/z^9";
    pub const THREE_POSITIONS: [usize; 3] = [1, 6, 9];
    /// Coefficients of `e = x + 8 x^6 + 8 z^3 x^9`.
    pub const THREE_ERROR: &str = "0; 1; 0; 0; 0; 0; 8; 0; 0; 8*z^3; 0";
}

mod p5 {
    pub const G: &str = "2*z^2/(z^2+2*z+1); (3*z+4)/(z+1); 1";
    /// Constant terms `c_j` of the linear factors `x + c_j` whose llcm is `x^5 - x`.
    pub const FACTORS: &str = "\
z/(z+1); (z+4)/(z+1); (z^2+z+1)/(z^2+4); (z^3+4*z^2+z+4)/(z^3+2*z^2+2*z+1); (z^3+3*z^2+3*z+1)/(z^3+4*z^2+z+4)";
    pub const CENTER: &str = "0; 4; 0; 0; 0; 1";
    pub const N: &str = "\
1; 1; 1; 1; 1
4*z/(z+1); (4*z+1)/(z+1); (4*z^2+4*z+4)/(z^2+4); (4*z^3+z^2+4*z+1)/(z^3+2*z^2+2*z+1); (4*z^3+2*z^2+2*z+4)/(z^3+4*z^2+z+4)
(z^2+4*z)/(z^2+2*z+1); (z^2+z+1)/(z^2+2*z+1); (z^2+1)/(z^2+2*z+1); (z^2+2*z+1)/(z^2+z+1); (z^2+2*z+1)/(z^2+1)
(4*z^3+4*z^2+4*z)/(z^3+3*z^2+3*z+1); (4*z^3+z^2+4*z+1)/(z^3+3*z^2+3*z+1); (4*z+4)/(z+4); (4*z^2+1)/(z^2+z+1); (4*z^3+3*z^2+3*z+4)/(z^3+4*z^2+z+4)
(z^4+4*z^3+z^2+4*z)/(z^4+4*z^3+z^2+4*z+1); 1; 1; 1; 1";
    pub const MESSAGE: &str = "1; 0; 0";
    pub const CODEWORD: &str = "2*z^2/(z^2+2*z+1); (3*z+4)/(z+1); 1; 0; 0";
    pub const RECEIVED: &str = "2*z^2/(z^2+2*z+1); (3*z+4)/(z+1); 1; 0; z";
    pub const TABLE: &str = "\
(z^5+4*z^4+z^3+4*z^2)/(z^5+1)
4*z^2/(z^2+2*z+1)";
    pub const RCEF: &str = "\
1
(4*z^3+2*z^2+2*z+4)/(z^3+4*z^2+z+4)";
    pub const RHO: &str = "(z^3+3*z^2+3*z+1)/(z^3+4*z^2+z+4); 1";
    pub const RHO_N: &str = "\
1/(z^4+4); (z^3+4*z^2+z)/(z^4+4); (3*z^2+2*z)/(z^3+z^2+z+1); \
(2*z^5+3*z^4+3*z^3+3*z^2+2*z)/(z^6+z^5+z^4+4*z^2+4*z+4); 0";
    pub const SYSTEM: &str = "(z^4+4*z^3+z^2+4*z)/(z^5+1)";
    pub const RHS: &str = "(z^5+4*z^4+z^3+4*z^2)/(z^5+1)";
    pub const VALUES: &str = "z";
}

/// Compares computed objects against goldens and prints both.
struct Checker {
    p: Prime,
    perturb: bool,
    checked: usize,
}

impl Checker {
    fn new(p: u32, perturb: bool) -> Self {
        Checker { p: Prime::new(p).expect("example prime"), perturb, checked: 0 }
    }

    fn golden(&self, text: &str) -> FunMatrix {
        FunMatrix::parse(text, self.p, ParseMode::Strict).expect("embedded golden parses")
    }

    fn golden_row(&self, text: &str) -> Vec<RatFun> {
        self.golden(text).row(0).to_vec()
    }

    fn matrix(&mut self, name: &str, computed: &FunMatrix, golden: &str) -> CliResult {
        let mut expected = self.golden(golden);
        if self.perturb && self.checked == 0 {
            let bumped = expected.get(0, 0) + &RatFun::one(self.p);
            expected.set(0, 0, bumped);
        }
        self.checked += 1;
        println!("{name}:\n{}\n", computed.to_text());
        if computed == &expected {
            return Ok(());
        }
        Err(CliError::Mismatch(format!("{name} differs from the golden value\n{}", diff(computed, &expected))))
    }

    fn row(&mut self, name: &str, computed: &[RatFun], golden: &str) -> CliResult {
        self.matrix(name, &FunMatrix::row_vector(self.p, computed), golden)
    }

    fn column(&mut self, name: &str, computed: &[RatFun], golden: &str) -> CliResult {
        self.matrix(name, &FunMatrix::row_vector(self.p, computed).transpose(), golden)
    }

    fn positions(&mut self, name: &str, computed: &[usize], golden: &[usize]) -> CliResult {
        self.checked += 1;
        println!("{name}: {computed:?}\n");
        if computed == golden {
            return Ok(());
        }
        Err(CliError::Mismatch(format!("{name}: computed {computed:?}, expected {golden:?}")))
    }

    fn claim(&mut self, name: &str, ok: bool) -> CliResult {
        self.checked += 1;
        println!("{name}: {}\n", if ok { "yes" } else { "no" });
        if ok {
            Ok(())
        } else {
            Err(CliError::Mismatch(format!("{name} does not hold")))
        }
    }
}

fn diff(computed: &FunMatrix, expected: &FunMatrix) -> String {
    if (computed.rows(), computed.cols()) != (expected.rows(), expected.cols()) {
        return format!(
            "shape {}x{} instead of {}x{}",
            computed.rows(),
            computed.cols(),
            expected.rows(),
            expected.cols()
        );
    }
    let mut out = Vec::new();
    for i in 0..computed.rows() {
        for j in 0..computed.cols() {
            if computed.get(i, j) != expected.get(i, j) {
                out.push(format!(
                    "  entry ({i}, {j}): computed {}, expected {}",
                    computed.get(i, j).to_text(),
                    expected.get(i, j).to_text()
                ));
            }
        }
    }
    out.join("\n")
}

fn need<T>(v: Option<T>, what: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Mismatch(format!("decoder did not produce {what}")))
}

/// Checks the decoder intermediates that both examples print.
fn check_trace(ck: &mut Checker, label: &str, trace: &DecodeTrace, rcef: &str, rho_n: &str) -> CliResult {
    ck.matrix(&format!("{label} rcef(S^tau)"), &need(trace.rcef.clone(), "rcef")?, rcef)?;
    ck.row(&format!("{label} rho_N"), &need(trace.rho_n.clone(), "rho_N")?, rho_n)
}

fn run_p11(perturb: bool) -> CliResult {
    let mut ck = Checker::new(11, perturb);
    let p = ck.p;
    let spec = CodeSpec::build(RatFun::one(p), RatFun::parse("1/z", p)?, 7, 0)?;
    ck.row("g", spec.generator().coeffs(), p11::G)?;
    ck.matrix("N", spec.n_matrix(), p11::N)?;
    let c = spec.encode(&Message::new(ck.golden_row(p11::MESSAGE)))?;
    ck.row("codeword", c.coords(), p11::CODEWORD)?;

    println!("== two errors ==\n");
    let y = inject_errors(c.coords(), &p11::TWO_POSITIONS, &ck.golden_row(p11::TWO_VALUES))?;
    ck.row("received", &y, p11::TWO_RECEIVED)?;
    let (outcome, trace) = decode_basic_traced(&y, &spec)?;
    ck.matrix("S^tau", &need(trace.table.clone(), "S^tau")?, p11::TWO_TABLE)?;
    check_trace(&mut ck, "two-error", &trace, p11::TWO_RCEF, p11::TWO_RHO_N)?;
    ck.row("rho", need(trace.divisor.clone(), "rho")?.rho.coeffs(), p11::TWO_RHO)?;
    let (a, b) = need(trace.value_system.clone(), "the error value system")?;
    ck.matrix("error value matrix", &a, p11::TWO_SYSTEM)?;
    ck.row("error value right-hand side", &b, p11::TWO_RHS)?;
    let e = match outcome {
        BasicOutcome::Errors(e) => e,
        other => return Err(CliError::Mismatch(format!("basic decoder returned {other:?}"))),
    };
    ck.positions("positions", e.positions(), &p11::TWO_POSITIONS)?;
    ck.row("values", e.values(), p11::TWO_VALUES)?;

    println!("== three errors ==\n");
    let y = ck.golden_row(p11::THREE_RECEIVED);
    let (outcome, trace) = decode_basic_traced(&y, &spec)?;
    ck.claim("basic decoder reports a decoding failure", outcome == BasicOutcome::DecodingFailure)?;
    check_trace(&mut ck, "three-error", &trace, p11::THREE_RCEF, p11::THREE_RHO_N)?;
    ck.positions("basic candidates", &need(trace.candidates.clone(), "candidates")?, &[9])?;
    let (decoded, trace) = decode_traced(&y, &spec, true)?;
    ck.matrix("H_rho", &need(trace.h_rho.clone(), "H_rho")?, p11::THREE_H_RHO)?;
    let (a, b) = need(trace.value_system.clone(), "the error value system")?;
    ck.matrix("error value matrix", &a, p11::THREE_SYSTEM)?;
    ck.row("error value right-hand side", &b, p11::THREE_RHS)?;
    let e = match decoded {
        Decoded::Errors(e) => e,
        Decoded::ZeroError => return Err(CliError::Mismatch("full decoder found no error".into())),
    };
    ck.positions("positions", e.positions(), &p11::THREE_POSITIONS)?;
    ck.row("error vector", &e.to_dense(&spec), p11::THREE_ERROR)?;
    Ok(())
}

fn run_p5(perturb: bool) -> CliResult {
    let mut ck = Checker::new(5, perturb);
    let p = ck.p;
    let spec = CodeSpec::build(RatFun::z(p), RatFun::parse("1/(z+1)", p)?, 3, 0)?;
    ck.row("g", spec.generator().coeffs(), p5::G)?;
    ck.claim("gamma = 1", spec.gamma().is_one())?;
    let factors: Vec<RatFun> = (0..5).map(|j| -spec.root(j)).collect();
    ck.row("linear factor constants", &factors, p5::FACTORS)?;
    let der = spec.derivation();
    let linear: Vec<OrePoly> = (0..5).map(|j| OrePoly::x_minus(der, spec.root(j))).collect();
    ck.row("llcm of the linear factors", llcm_all(der, linear.iter())?.coeffs(), p5::CENTER)?;
    ck.matrix("N", spec.n_matrix(), p5::N)?;
    let c = spec.encode(&Message::new(ck.golden_row(p5::MESSAGE)))?;
    ck.row("codeword", c.coords(), p5::CODEWORD)?;
    let y = inject_errors(c.coords(), &[4], &ck.golden_row(p5::VALUES))?;
    ck.row("received", &y, p5::RECEIVED)?;
    let (outcome, trace) = decode_basic_traced(&y, &spec)?;
    ck.matrix("S^tau", &need(trace.table.clone(), "S^tau")?, p5::TABLE)?;
    check_trace(&mut ck, "single-error", &trace, p5::RCEF, p5::RHO_N)?;
    ck.row("rho", need(trace.divisor.clone(), "rho")?.rho.coeffs(), p5::RHO)?;
    let (a, b) = need(trace.value_system.clone(), "the error value system")?;
    ck.matrix("error value matrix", &a, p5::SYSTEM)?;
    ck.column("error value right-hand side", &b, p5::RHS)?;
    let e = match outcome {
        BasicOutcome::Errors(e) => e,
        other => return Err(CliError::Mismatch(format!("basic decoder returned {other:?}"))),
    };
    ck.positions("positions", e.positions(), &[4])?;
    ck.row("values", e.values(), p5::VALUES)?;
    Ok(())
}

pub fn run(which: &str, perturb: bool) -> CliResult {
    let result = match which {
        "p11" => run_p11(perturb),
        "p5" => run_p5(perturb),
        other => return Err(CliError::Mismatch(format!("unknown demo {other:?}"))),
    };
    match &result {
        Ok(()) => println!("demo {which}: all objects match"),
        Err(_) => println!("demo {which}: MISMATCH"),
    }
    result
}
