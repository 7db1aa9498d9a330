#include "gls/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gls {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

Rat parse_rat_or_throw(const std::string& tok, const std::string& context) {
    auto r = Rat::parse(tok);
    if (!r)
        throw ParseError(context + ": malformed fraction '" + tok + "'");
    return *r;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return in;
}

} // namespace

std::vector<Branch> parse_branch_table(std::istream& in) {
    std::vector<Branch> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        if (blank(body))
            continue;
        std::istringstream ls(body);
        std::string dtok, ltok, rtok, otok;
        if (!(ls >> dtok >> ltok >> rtok >> otok))
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected 'digit left right orientation'");
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
        Branch b;
        try {
            b.digit = std::stoll(dtok);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad digit '" + dtok + "'");
        }
        b.left = parse_rat_or_throw(ltok, "line " + std::to_string(lineno));
        b.right = parse_rat_or_throw(rtok, "line " + std::to_string(lineno));
        if (otok == "inc" || otok == "increasing")
            b.orientation = Orientation::increasing;
        else if (otok == "dec" || otok == "decreasing")
            b.orientation = Orientation::decreasing;
        else
            throw ParseError("line " + std::to_string(lineno) + ": orientation must be inc or dec");
        out.push_back(std::move(b));
    }
    return out;
}

GlsSpec load_table_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return GlsSpec::from_table(parse_branch_table(in), "table:" + path);
}

void write_branch_table(std::ostream& out, const GlsSpec& spec) {
    for (const Branch& b : spec.branches())
        out << b.digit << ' ' << b.left.str() << ' ' << b.right.str() << ' '
            << (b.orientation == Orientation::increasing ? "inc" : "dec") << '\n';
}

GlsSpec parse_spec_id(const std::string& id) {
    if (id == "lueroth-classic")
        return GlsSpec::lueroth_classic();
    if (id == "lueroth-alternating")
        return GlsSpec::lueroth_alternating();
    if (id.rfind("b-adic:", 0) == 0) {
        try {
            return GlsSpec::b_adic(std::stoll(id.substr(7)));
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad b-adic base in '" + id + "'");
        }
    }
    if (id.rfind("table:", 0) == 0)
        return load_table_file(id.substr(6));
    throw ParseError("unknown spec selector '" + id +
                     "' (expected b-adic:B, lueroth-classic, lueroth-alternating or table:PATH)");
}

PointSeq parse_seq_id(const std::string& id) {
    if (id == "farey")
        return PointSeq::farey();
    if (id.rfind("vdc:", 0) == 0) {
        try {
            return PointSeq::van_der_corput(std::stoll(id.substr(4)));
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad van der Corput base in '" + id + "'");
        }
    }
    if (id == "kronecker:golden")
        return PointSeq::kronecker_golden();
    if (id.rfind("kronecker:sqrt:", 0) == 0) {
        try {
            return PointSeq::kronecker_sqrt(std::stoll(id.substr(15)));
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad sqrt argument in '" + id + "'");
        }
    }
    if (id.rfind("list:", 0) == 0) {
        std::string path = id.substr(5);
        std::ifstream in = open_or_throw(path);
        std::vector<Rat> pts;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string body = strip_comment(line);
            if (blank(body))
                continue;
            pts.push_back(parse_rat_or_throw(body, path + " line " + std::to_string(lineno)));
        }
        return PointSeq::custom_list(std::move(pts), path);
    }
    throw ParseError("unknown sequence selector '" + id +
                     "' (expected vdc:B, farey, kronecker:sqrt:M, kronecker:golden or list:PATH)");
}

void write_schedule(std::ostream& out, const CutoffSchedule& sched) {
    out << "gls-schedule v1 horizon=" << sched.horizon_factor.str() << " spec=" << sched.spec_id
        << " seq=" << sched.seq_id << '\n';
    for (std::size_t l = 0; l < sched.cutoffs.size(); ++l)
        out << l << ' ' << sched.cutoffs[l] << ' ' << sched.verified_to[l] << '\n';
}

CutoffSchedule read_schedule(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw ParseError("empty schedule file");
    std::istringstream hs(header);
    std::string magic, version;
    if (!(hs >> magic >> version) || magic != "gls-schedule" || version != "v1")
        throw ParseError("not a gls-schedule v1 file");
    CutoffSchedule sched;
    std::string kv;
    while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError("bad schedule header token '" + kv + "'");
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "horizon")
            sched.horizon_factor = parse_rat_or_throw(val, "schedule header");
        else if (key == "spec")
            sched.spec_id = val;
        else if (key == "seq")
            sched.seq_id = val;
        else
            throw ParseError("unknown schedule header key '" + key + "'");
    }
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line))
            continue;
        std::istringstream ls(line);
        std::uint64_t lev, cut, vto;
        if (!(ls >> lev >> cut >> vto))
            throw ParseError("schedule line " + std::to_string(lineno) +
                             ": expected 'level cutoff verified_to'");
        if (lev != sched.cutoffs.size())
            throw ParseError("schedule line " + std::to_string(lineno) + ": levels out of order");
        sched.cutoffs.push_back(cut);
        sched.verified_to.push_back(vto);
    }
    sched.check();
    return sched;
}

void write_digits_text(std::ostream& out, std::span<const std::int64_t> digits) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i)
            out << ' ';
        out << digits[i];
    }
    out << '\n';
}

std::vector<std::int64_t> read_digits_text(std::istream& in) {
    std::vector<std::int64_t> out;
    std::int64_t d;
    while (in >> d)
        out.push_back(d);
    if (!in.eof() && in.fail())
        throw ParseError("malformed digit text stream");
    return out;
}

namespace {

void put_uvarint(std::ostream& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.put(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.put(static_cast<char>(v));
}

std::uint64_t get_uvarint(std::istream& in) {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
        int c = in.get();
        if (c == EOF)
            throw ParseError("truncated varint stream");
        v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
        if (!(c & 0x80))
            return v;
        shift += 7;
        if (shift >= 64)
            throw ParseError("varint overflow");
    }
}

} // namespace

void write_digits_varint(std::ostream& out, std::span<const std::int64_t> digits) {
    put_uvarint(out, digits.size());
    for (std::int64_t d : digits) {
        if (d < 1)
            throw DomainError("varint digit stream requires positive digits");
        put_uvarint(out, static_cast<std::uint64_t>(d));
    }
}

std::vector<std::int64_t> read_digits_varint(std::istream& in) {
    std::uint64_t count = get_uvarint(in);
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(static_cast<std::int64_t>(get_uvarint(in)));
    return out;
}

void write_discrepancy_csv(std::ostream& out, std::span<const std::pair<std::uint64_t, Rat>> rows,
                           std::optional<std::size_t> decimals) {
    out << "n,D_n\n";
    for (const auto& [n, d] : rows)
        out << n << ',' << (decimals ? d.decimal(*decimals) : d.str()) << '\n';
}

std::string block_str(const Block& block) {
    std::string s;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i)
            s += '-';
        s += std::to_string(block[i]);
    }
    return s;
}

void write_normality_csv(std::ostream& out, const NormalityReport& rep, std::size_t decimals) {
    out << "block,occurrences,n,empirical,expected,deviation,deviation_decimal\n";
    for (const BlockStats& st : rep.rows)
        out << block_str(st.block) << ',' << st.occurrences << ',' << st.positions << ','
            << st.empirical.str() << ',' << st.expected.str() << ',' << st.deviation.str() << ','
            << st.deviation.decimal(decimals) << '\n';
}

void write_normality_json(std::ostream& out, const NormalityReport& rep, std::size_t decimals) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["max_r"] = rep.max_r;
    j["alphabet"] = rep.alphabet;
    j["alphabet_mass"] = rep.alphabet_mass.str();
    j["alphabet_mass_decimal"] = rep.alphabet_mass.decimal(decimals);
    auto& rows = j["blocks"] = nlohmann::json::array();
    for (const BlockStats& st : rep.rows) {
        nlohmann::json row;
        row["block"] = st.block;
        row["occurrences"] = st.occurrences;
        row["n"] = st.positions;
        row["empirical"] = st.empirical.str();
        row["expected"] = st.expected.str();
        row["deviation"] = st.deviation.str();
        row["deviation_decimal"] = st.deviation.decimal(decimals);
        rows.push_back(std::move(row));
    }
    out << j.dump(2) << '\n';
}

void write_survey_csv(std::ostream& out, const Survey& sv) {
    out << "fraction,class,length_or_preperiod,period\n";
    for (const SurveyRow& row : sv.rows) {
        out << row.fraction.str() << ',';
        if (row.cls.finite())
            out << "finite," << row.cls.digits.size() << ',';
        else
            out << "periodic," << row.cls.preperiod.size() << ',' << block_str(row.cls.period);
        out << '\n';
    }
}

void write_survey_summary_json(std::ostream& out, const Survey& sv) {
    nlohmann::json j;
    j["base"] = sv.base;
    j["k_max"] = sv.k_max;
    j["fractions"] = sv.rows.size();
    j["finite"] = sv.finite_count;
    j["periodic"] = sv.periodic_count;
    j["max_finite_length"] = sv.max_finite_length;
    auto& ex = j["periodic_exceptions"] = nlohmann::json::array();
    for (const Rat& r : sv.periodic_exceptions)
        ex.push_back(r.str());
    out << j.dump(2) << '\n';
}

} // namespace gls
