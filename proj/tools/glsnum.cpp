// glsnum: validate GLS specs, generate digits of constructed normal
// numbers, and analyze digit statistics, discrepancy and rational
// expansions. Every subcommand is a pure function of its flags and input
// files; reruns produce byte-identical output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gls/constructor.hpp"
#include "gls/discrepancy.hpp"
#include "gls/errors.hpp"
#include "gls/io.hpp"
#include "gls/normality.hpp"
#include "gls/rational_lueroth.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;
constexpr int kResourceCap = 3;

// Writes through a temp file and renames, so failed runs leave no partial

// output behind.
class AtomicFile {
public:
    explicit AtomicFile(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
        out_.open(tmp_, std::ios::binary);
        if (!out_)
            throw gls::DomainError("cannot write " + tmp_);
    }
    ~AtomicFile() {
        if (!committed_) {
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }
    std::ostream& stream() { return out_; }
    void commit() {
        out_.flush();
        if (!out_)
            throw gls::DomainError("write to " + tmp_ + " failed");
        out_.close();
        std::filesystem::rename(tmp_, path_);
        committed_ = true;
    }

private:
    std::string path_, tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    AtomicFile f(path);
    fn(f.stream());
    f.commit();
}

struct ValidateArgs {
    std::string spec_id;
};

int run_validate(const ValidateArgs& a) {
    gls::GlsSpec spec = gls::parse_spec_id(a.spec_id);
    gls::ValidationReport rep = gls::validate(spec);
    for (const std::string& s : rep.issues)
        std::cout << "error: " << s << '\n';
    for (const std::string& s : rep.notes)
        std::cout << "note: " << s << '\n';
    std::cout << (rep.ok ? "ok: " : "invalid: ") << spec.name() << '\n';
    return rep.ok ? kOk : kDomainFailure;
}

struct GenerateArgs {
    std::string spec_id, seq_id;
    std::uint64_t count = 0;
    std::size_t levels = 8;
    std::string horizon = "4";
    std::uint64_t n_cap = 10'000'000;
    std::string schedule_in, out, schedule_out;
    std::string format = "text";
    std::string short_columns = "truncate";
    bool no_verify = false;
    bool serial = false;
};

int run_generate(const GenerateArgs& a) {
    gls::GlsSpec spec = gls::parse_spec_id(a.spec_id);
    gls::PointSeq seq = gls::parse_seq_id(a.seq_id);
    auto horizon = gls::Rat::parse(a.horizon);
    if (!horizon)
        throw gls::ParseError("bad horizon factor '" + a.horizon + "'");

    gls::CutoffSearchOptions search;
    search.horizon_factor = *horizon;
    search.n_cap = a.n_cap;
    search.parallel = !a.serial;

    gls::CutoffSchedule sched;
    if (!a.schedule_in.empty()) {
        std::ifstream in(a.schedule_in);
        if (!in)
            throw gls::ParseError("cannot open " + a.schedule_in);
        sched = gls::read_schedule(in);
        if (!a.no_verify) {
            std::string diag;
            if (!gls::verify_schedule(spec, seq, sched, &diag, !a.serial))
                throw gls::DomainError("schedule replay failed: " + diag);
        }
    } else {
        sched = gls::choose_cutoffs(spec, seq, a.levels, search);
    }

    gls::StreamOptions opts;
    opts.policy = a.short_columns == "skip" ? gls::ShortColumnPolicy::skip_column
                                            : gls::ShortColumnPolicy::truncate_prefix;
    opts.extendable = true;
    opts.n_cap = a.n_cap;
    opts.parallel = !a.serial;
    gls::DigitStream stream(spec, seq, sched, opts);

    std::vector<std::int64_t> digits;
    digits.reserve(a.count);
    while (digits.size() < a.count) {
        auto d = stream.next();
        if (!d)
            throw gls::ScheduleExhausted("schedule cannot be extended far enough");
        digits.push_back(*d);
    }

    with_output(a.out, [&](std::ostream& os) {
        if (a.format == "varint")
            gls::write_digits_varint(os, digits);
        else
            gls::write_digits_text(os, digits);
    });

    std::string sched_path = a.schedule_out;
    if (sched_path.empty() && !a.out.empty())
        sched_path = a.out + ".schedule";
    if (!sched_path.empty()) {
        AtomicFile f(sched_path);
        gls::write_schedule(f.stream(), stream.schedule());
        f.commit();
    }

    const gls::StreamStats& st = stream.stats();
    std::cerr << "generated " << st.digits_emitted << " digits from " << st.columns_consumed
              << " columns (levels=" << stream.schedule().levels()
              << ", short_columns=" << st.short_columns << ", dropped=" << st.digits_dropped
              << ")\n";
    return kOk;
}

struct AnalyzeArgs {
    std::string spec_id, digits_path;
    std::string format = "text";
    std::size_t max_r = 3;
    std::size_t digit_cap = 0; // 0: whole alphabet for finite specs, 8 otherwise
    std::size_t decimals = 9;
    std::string out;
    bool json = false;
    bool serial = false;
};

int run_analyze(const AnalyzeArgs& a) {
    gls::GlsSpec spec = gls::parse_spec_id(a.spec_id);
    std::ifstream in(a.digits_path, std::ios::binary);
    if (!in)
        throw gls::ParseError("cannot open " + a.digits_path);
    std::vector<std::int64_t> digits =
        a.format == "varint" ? gls::read_digits_varint(in) : gls::read_digits_text(in);
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (!spec.valid_digit(digits[i]))
            throw gls::DomainError("digit " + std::to_string(digits[i]) + " at position " +
                                   std::to_string(i) + " is outside the alphabet of " +
                                   spec.name());

    std::size_t cap = a.digit_cap;
    if (cap == 0)
        cap = spec.finite() ? spec.branches().size() : 8;
    gls::NormalityReport rep = gls::normality_report(digits, spec, a.max_r, cap, !a.serial);

    with_output(a.out, [&](std::ostream& os) {
        if (a.json)
            gls::write_normality_json(os, rep, a.decimals);
        else
            gls::write_normality_csv(os, rep, a.decimals);
    });
    return kOk;
}

struct DiscrepancyArgs {
    std::string seq_id;
    std::uint64_t n_max = 0;
    std::uint64_t stride = 1;
    std::optional<std::size_t> decimals;
    std::string out;
    bool serial = false;
};

int run_discrepancy(const DiscrepancyArgs& a) {
    gls::PointSeq seq = gls::parse_seq_id(a.seq_id);
    auto rows = gls::prefix_discrepancies(seq, a.n_max, a.stride, !a.serial);
    with_output(a.out, [&](std::ostream& os) { gls::write_discrepancy_csv(os, rows, a.decimals); });
    return kOk;
}

struct SurveyArgs {
    std::string spec_id = "lueroth-classic";
    std::int64_t base = 0;
    std::uint32_t k_max = 0;
    std::uint64_t cap = 1'000'000;
    std::string out, summary;
    bool serial = false;
};

int run_survey(const SurveyArgs& a) {
    gls::GlsSpec spec = gls::parse_spec_id(a.spec_id);
    gls::Survey sv = gls::survey_family(spec, a.base, a.k_max, true, a.cap, !a.serial);
    with_output(a.out, [&](std::ostream& os) { gls::write_survey_csv(os, sv); });
    if (!a.summary.empty()) {
        AtomicFile f(a.summary);
        gls::write_survey_summary_json(f.stream(), sv);
        f.commit();
    }
    std::cerr << "surveyed " << sv.rows.size() << " fractions: " << sv.finite_count
              << " finite, " << sv.periodic_count
              << " periodic (max finite length " << sv.max_finite_length << ")\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GLS expansions, exact discrepancy, and normal number construction"};
    app.require_subcommand(1);

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "validate a GLS spec");
    validate->add_option("--spec", va.spec_id, "b-adic:B | lueroth-classic | lueroth-alternating | table:PATH")
        ->required();

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "emit digits of the constructed number");
    generate->add_option("--spec", ga.spec_id, "GLS spec selector")->required();
    generate->add_option("--seq", ga.seq_id, "sequence selector (vdc:B | farey | kronecker:... | list:PATH)")
        ->required();
    generate->add_option("--count", ga.count, "number of digits to emit")->required();
    generate->add_option("--levels", ga.levels, "initial schedule depth")->capture_default_str();
    generate->add_option("--horizon-factor", ga.horizon, "verification window factor")
        ->capture_default_str();
    generate->add_option("--ncap", ga.n_cap, "column evaluation cap per level")
        ->capture_default_str();
    generate->add_option("--schedule", ga.schedule_in, "load a schedule file instead of searching");
    generate->add_flag("--no-verify", ga.no_verify, "skip replaying a loaded schedule");
    generate->add_option("--format", ga.format, "digit output format")
        ->check(CLI::IsMember({"text", "varint"}))
        ->capture_default_str();
    generate->add_option("--out", ga.out, "digit output path (stdout when omitted)");
    generate->add_option("--schedule-out", ga.schedule_out,
                         "schedule sidecar path (defaults to OUT.schedule)");
    generate->add_option("--short-columns", ga.short_columns,
                         "policy for expansions shorter than l(j)")
        ->check(CLI::IsMember({"truncate", "skip"}))
        ->capture_default_str();
    generate->add_flag("--serial", ga.serial, "disable OpenMP parallelism");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "block frequency report for a digit file");
    analyze->add_option("--spec", aa.spec_id, "GLS spec selector")->required();
    analyze->add_option("--digits", aa.digits_path, "digit file")->required();
    analyze->add_option("--format", aa.format, "digit file format")
        ->check(CLI::IsMember({"text", "varint"}))
        ->capture_default_str();
    analyze->add_option("--max-r", aa.max_r, "maximum block length")->capture_default_str();
    analyze->add_option("--digit-cap", aa.digit_cap,
                        "restrict to the K most probable digits (0 = automatic)");
    analyze->add_option("--decimals", aa.decimals, "decimal digits in reports")
        ->capture_default_str();
    analyze->add_option("--out", aa.out, "output path (stdout when omitted)");
    analyze->add_flag("--json", aa.json, "emit JSON instead of CSV");
    analyze->add_flag("--serial", aa.serial, "disable OpenMP parallelism");

    DiscrepancyArgs da;
    auto* discrepancy = app.add_subcommand("discrepancy", "prefix discrepancy curve of a sequence");
    discrepancy->add_option("--seq", da.seq_id, "sequence selector")->required();
    discrepancy->add_option("--nmax", da.n_max, "largest prefix length")->required();
    discrepancy->add_option("--stride", da.stride, "sampling stride")->capture_default_str();
    std::size_t dec = 0;
    auto* dec_opt = discrepancy->add_option("--decimals", dec, "render decimals instead of p/q");
    discrepancy->add_option("--out", da.out, "output path (stdout when omitted)");
    discrepancy->add_flag("--serial", da.serial, "disable OpenMP parallelism");

    SurveyArgs sa;
    auto* survey = app.add_subcommand("survey", "classify a/base^k expansions");
    survey->add_option("--base", sa.base, "denominator base p")
        ->required()
        ->check(CLI::Range(std::int64_t{2}, std::numeric_limits<std::int64_t>::max()));
    survey->add_option("--kmax", sa.k_max, "largest exponent k")
        ->required()
        ->check(CLI::Range(std::uint32_t{1}, std::numeric_limits<std::uint32_t>::max()));
    survey->add_option("--spec", sa.spec_id, "GLS spec selector")->capture_default_str();
    survey->add_option("--cap", sa.cap, "fraction count cap")->capture_default_str();
    survey->add_option("--out", sa.out, "table output path (stdout when omitted)");
    survey->add_option("--summary", sa.summary, "summary JSON path");
    survey->add_flag("--serial", sa.serial, "disable OpenMP parallelism");

    try {
        app.parse(argc, argv);
        if (dec_opt->count() > 0)
            da.decimals = dec;
        if (validate->parsed())
            return run_validate(va);
        if (generate->parsed())
            return run_generate(ga);
        if (analyze->parsed())
            return run_analyze(aa);
        if (discrepancy->parsed())
            return run_discrepancy(da);
        if (survey->parsed())
            return run_survey(sa);
        return kUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const gls::ResourceCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResourceCap;
    } catch (const gls::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
}
