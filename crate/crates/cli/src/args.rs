use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ps-lab",
    version,
    about = "Piatetski-Shapiro primes, Waring-Goldbach counts and circle-method objects",
    long_about = "Evaluates the objects behind the representation N = p_1^k + ... + p_s^k with every \
                  p_i a Piatetski-Shapiro prime floor(m^c), 1 < c < 2. Each subcommand runs one \
                  operation and prints a single JSON object or CSV table."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Starting MPFR precision for certified floors (the cap is 4096 bits or
    /// PS_LAB_MAX_PRECISION_BITS).
    #[arg(long, default_value_t = 96, global = true)]
    pub precision_bits: u32,
    /// Seed for pseudorandom choices.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Data-parallel partition count.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    /// Emit wall_time_ms as null so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Piatetski-Shapiro integers floor(m^c) up to a limit.
    #[command(long_about = "Lists every floor(m^c) <= limit, m >= 1. Each floor is certified by an \
                            MPFR interval enclosure of m^c that contains no integer.")]
    PsList(PsLimit),
    /// Piatetski-Shapiro primes up to a limit.
    #[command(long_about = "Lists the primes of the form floor(m^c) up to limit. Primality uses \
                            deterministic Miller-Rabin over the 64-bit range.")]
    PsPrimes(PsLimit),
    /// Membership test via floor(-n^(1/c)) - floor(-(n+1)^(1/c)) = 1.
    #[command(long_about = "n is of the form floor(m^c) exactly when floor(-n^d) - floor(-(n+1)^d) \
                            equals 1, d = 1/c. Also reports Delta psi(n) = psi(-(n+1)^d) - psi(-n^d) \
                            with psi(x) = x - floor(x) - 1/2.")]
    PsMember(PsMember),
    /// Local modulus K(k) = product of p^gamma(p,k) over p - 1 | k.
    #[command(long_about = "K(k) is the product of p^gamma over primes p with (p - 1) | k, where \
                            p^theta exactly divides k and gamma = theta + 2 if p = 2 and k is even, \
                            theta + 1 otherwise.")]
    Kmod(KOnly),
    /// Complete sum S(a,q) over reduced residues of e(a x^k / q).
    #[command(long_about = "S(a,q) = sum over 1 <= x <= q, gcd(x,q) = 1 of e(a x^k / q). With \
                            --scan-q-max, reports max |S(a,q)| / q^exponent over all reduced a/q.")]
    GaussSum(GaussSum),
    /// Local term S_m(q) of the singular series.
    #[command(name = "s-m-q", long_about = "S_m(q) = sum over reduced a mod q of (S(a,q)/phi(q))^s e(-a m / q), \
                            computed through a histogram of x^k mod q and an FFT, with the direct \
                            double sum as a cross-check.")]
    SMQ(SMQ),
    /// Truncated singular series sum_{q <= Q} S_m(q).
    #[command(long_about = "Partial sum of the singular series over q <= Q with every term and a \
                            heuristic tail size Q^(2 - s/2 + 0.1) / (s/2 - 2.1).")]
    SingularSeries(SingularSeries),
    /// Weyl sum sum_{n <= X} e(alpha n^k).
    #[command(long_about = "Weyl sum with alpha held as a 128-bit fixed-point fraction, so the \
                            phase alpha n^k mod 1 stays exact for arbitrarily large n^k. alpha may be \
                            a decimal or a fraction p/q.")]
    WeylSum(AlphaSum),
    /// Sum of e(alpha p^k) over Piatetski-Shapiro primes p <= X.
    PsPrimeSum(PsAlphaSum),
    /// Sum of d p^(d-1) e(alpha p^k) over all primes p <= X, d = 1/c.
    WeightedPrimeSum(PsAlphaSum),
    /// Vaaler's trigonometric approximation of the sawtooth psi.
    #[command(long_about = "Builds the degree-H Vaaler polynomial psi*(x) = -sum Phi(h/(H+1)) \
                            sin(2 pi h x)/(pi h), Phi(t) = pi t (1 - t) cot(pi t) + t, and measures \
                            sup |psi - psi*| and the envelope sum (1 - |h|/(H+1)) e(hx)/(2H+2) on \
                            the grid x_j = j / points.")]
    VaalerCheck(VaalerArgs),
    /// Vaughan's identity Lambda(n) = E1 - E2 - E3.
    #[command(long_about = "E1 = sum_{ab=n, a<=u} mu(a) log b, E2 = sum_{ab=n, a>v, b>u} Lambda(a) \
                            sum_{d|b, d<=u} mu(d), E3 = sum_{abc=n, b<=u, a<=v} mu(b) Lambda(a). With \
                            --n-max, sweeps every n in (v, n-max].")]
    VaughanCheck(VaughanArgs),
    /// Direct sum of e(g(n) + D n^delta) over lo < n <= hi.
    ShiftedSum(ShiftedArgs),
    /// Actual sums against stated upper-bound expressions.
    #[command(long_about = "Evaluates exponential sums directly and divides by a bound expression \
                            with constant 1 and N^epsilon slack. shift: g = alpha x^k plus D x^delta \
                            against N^(1+eps)((D N^(delta-k-1))^sigma + ...), sigma = 1/(l(l-1)). \
                            hb: k-th derivative test. corput: (q+2)-th derivative test. typeii: \
                            bilinear sums over m ~ x, n ~ N/x.")]
    BoundExperiment(BoundArgs),
    /// Major arcs |q alpha - a| <= L^kappa X^-k, q <= L^kappa, L = ln X.
    #[command(long_about = "Enumerates the arcs M(a,q) for coprime 1 <= a <= q <= L^kappa inside \
                            (w, 1 + w], w = L^kappa X^-k, and checks pairwise disjointness with exact \
                            rational endpoints.")]
    MajorArcs(ArcArgs),
    /// I(z) = integral_0^{N^(1/k)} d x^(d-1) e(z x^k) dx.
    #[command(long_about = "After y = x^k the phase is linear. The integral is split at the zeros \
                            of the oscillating factor, each panel done by adaptive Gauss-Kronrod, and \
                            long alternating tails are summed with repeated averaging.")]
    OscI(OscArgs),
    /// J(z) = integral_2^{N^(1/k)} d x^(d-1) e(z x^k) / ln x dx.
    OscJ(OscArgs),
    /// v(alpha - a/q) = S(a,q) J(alpha - a/q) / phi(q) on the arc M(a,q).
    VApprox(VApproxArgs),
    /// Predicted size of the representation count.
    #[command(long_about = "S(N) N^(s/(ck) - 1) Gamma(1 + 1/(ck))^s / Gamma(s/(ck)) / (ln N^(1/k))^s \
                            with the singular series truncated at q <= Q.")]
    MainTerm(MainTermArgs),
    /// Smallest admissible 2t for the 2t-th Weyl moment.
    #[command(long_about = "Tabulated for 3 <= k <= 12; beyond that the smallest even integer \
                            >= k^2 + 1 - max_{1<=s<=k} ceil(s(k-s-1)/(k-s+1)).")]
    TwoT(KOnly),
    /// nu(k) = k(k+1)^2 for k <= 11, 2m(m^2-1)/(m-k) with m = floor(3k/2) beyond.
    Nu(KOnly),
    /// Admissible exponent range (1, c_max) as an exact rational.
    #[command(long_about = "k = 3: c_max = 1 + 3(s-2t) min{1/(77s+158t), 1/(75s+164t)}. \
                            k >= 4: c_max = 1 + (s-2t)/((nu-1)s + 2t nu).")]
    CRange(CRangeArgs),
    /// Exact number of ordered s-tuples of PS primes with p_1^k + ... + p_s^k = N.
    #[command(long_about = "Dynamic programming over the k-th powers of PS primes, with a \
                            meet-in-the-middle count as an independent check. With --to, lists \
                            every N in [n, to].")]
    RepCount(RepArgs),
    /// Solutions of n_1^k + ... + n_t^k = n_{t+1}^k + ... + n_{2t}^k, n_i <= X.
    MomentCount(MomentArgs),
    /// Grid mean of |W(j/M)|^(2t) against the exact moment count.
    #[command(long_about = "(1/M) sum_{j<M} |sum_{n<=X} e(j n^k / M)|^(2t). Exact once \
                            M >= 2t X^k + 1; smaller grids are flagged.")]
    QuadratureCheck(QuadratureArgs),
    /// Exact counts against the main term over a window lo < N <= hi.
    #[command(long_about = "Mean of R(N)/main term over N = s mod K(k), the ratio of totals, and \
                            the share of all representations that falls in that class.")]
    Compare(CompareArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PsList(_) => "ps-list",
            Command::PsPrimes(_) => "ps-primes",
            Command::PsMember(_) => "ps-member",
            Command::Kmod(_) => "kmod",
            Command::GaussSum(_) => "gauss-sum",
            Command::SMQ(_) => "s-m-q",
            Command::SingularSeries(_) => "singular-series",
            Command::WeylSum(_) => "weyl-sum",
            Command::PsPrimeSum(_) => "ps-prime-sum",
            Command::WeightedPrimeSum(_) => "weighted-prime-sum",
            Command::VaalerCheck(_) => "vaaler-check",
            Command::VaughanCheck(_) => "vaughan-check",
            Command::ShiftedSum(_) => "shifted-sum",
            Command::BoundExperiment(_) => "bound-experiment",
            Command::MajorArcs(_) => "major-arcs",
            Command::OscI(_) => "osc-i",
            Command::OscJ(_) => "osc-j",
            Command::VApprox(_) => "v-approx",
            Command::MainTerm(_) => "main-term",
            Command::TwoT(_) => "two-t",
            Command::Nu(_) => "nu",
            Command::CRange(_) => "c-range",
            Command::RepCount(_) => "rep-count",
            Command::MomentCount(_) => "moment-count",
            Command::QuadratureCheck(_) => "quadrature-check",
            Command::Compare(_) => "compare",
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PsLimit {
    /// Exponent c in (1, 2), decimal or fraction.
    #[arg(long)]
    pub c: String,
    #[arg(long)]
    pub limit: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PsMember {
    #[arg(long)]
    pub c: String,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct KOnly {
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct GaussSum {
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Scan every reduced a/q with q up to this bound instead.
    #[arg(long)]
    pub scan_q_max: Option<u64>,
    #[arg(long, default_value_t = 0.6)]
    pub exponent: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SMQ {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct SingularSeries {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    /// Cutoff Q.
    #[arg(long)]
    pub q_max: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct AlphaSum {
    /// Frequency alpha, decimal or fraction.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PsAlphaSum {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
    #[arg(long)]
    pub c: String,
}

#[derive(Args, Debug, Serialize)]
pub struct VaalerArgs {
    /// Degree H.
    #[arg(long)]
    pub h: u32,
    #[arg(long, default_value_t = 100_000)]
    pub points: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct VaughanArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub u: f64,
    #[arg(long)]
    pub v: f64,
    #[arg(long)]
    pub n_max: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ShiftedArgs {
    /// Coefficients g_0,g_1,... of g(x) = sum g_j x^j, each a decimal or fraction.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub coeffs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub lo: u64,
    #[arg(long)]
    pub hi: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
    /// shift, hb, corput or typeii.
    #[arg(long)]
    pub lemma: String,
    #[arg(long)]
    pub k: u32,
    /// Exponent c in (1, 2); delta = 1/c.
    #[arg(long)]
    pub c: String,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// List a,b,c or grid start:stop:step.
    #[arg(long, default_value = "10,1000")]
    pub d_values: String,
    #[arg(long, default_value = "1000,10000")]
    pub n_values: String,
    #[arg(long, default_value_t = 1)]
    pub corput_q: u32,
    #[arg(long, default_value = "0.5")]
    pub x_exponents: String,
    /// ones or random (unimodular, seeded).
    #[arg(long, default_value = "ones")]
    pub coefficients: String,
}

#[derive(Args, Debug, Serialize)]
pub struct ArcArgs {
    #[arg(long)]
    pub x: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub kappa: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct OscArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u32,
    /// delta = 1/c in (1/2, 1].
    #[arg(long)]
    pub delta: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct VApproxArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct MainTermArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    /// Exponent c in [1, 2).
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 2000)]
    pub q_max: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CRangeArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub t: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct RepArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub c: String,
    #[arg(long)]
    pub to: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentArgs {
    #[arg(long)]
    pub t: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub t: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
    /// Grid size M.
    #[arg(long)]
    pub m: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub lo: u64,
    #[arg(long)]
    pub hi: u64,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub c: String,
    #[arg(long, default_value_t = 2000)]
    pub q_max: u64,
}
