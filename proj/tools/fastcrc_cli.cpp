#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fastcrc/analysis.hpp"
#include "fastcrc/codes.hpp"
#include "fastcrc/costmodel.hpp"
#include "fastcrc/engine.hpp"
#include "fastcrc/parallel.hpp"
#include "fastcrc/poly.hpp"
#include "fastcrc/tables.hpp"

using namespace fastcrc;

namespace {

Poly parse_poly_arg(const std::string& s) {
    auto p = Poly::parse_hex(s);
    if (!p) throw CLI::ValidationError("--poly", "expected hex polynomial like 0x10007");
    return *p;
}

std::vector<std::uint8_t> read_input(const std::string& path) {
    std::vector<std::uint8_t> data;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        std::string s = ss.str();
        data.assign(s.begin(), s.end());
        return data;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    data.assign(s.begin(), s.end());
    return data;
}

std::string check_hex(u64 value, int h) {
    int nibbles = (h + 3) / 4;
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%0*" PRIx64, nibbles, value);
    return buf;
}

Technique parse_technique(const std::string& name) {
    if (name == "basic") return Technique::basic;
    if (name == "new") return Technique::low_terms;
    if (name == "table") return Technique::multi_table;
    if (name == "fasttable") return Technique::fast_table;
    throw CLI::ValidationError("--technique", "one of basic|new|table|fasttable");
}

std::string limit_str(const Limit& lim) {
    switch (lim.kind) {
        case Limit::Kind::value: return std::to_string(lim.v);
        case Limit::Kind::unbounded: return "inf";
        case Limit::Kind::exceeds: return ">" + std::to_string(lim.bound);
    }
    return "?";
}

std::string rat_field(const Rat& r) {
    std::string exact = r.str();
    std::string dec = to_sig3(r);
    if (exact == dec) return exact;
    return exact + " (" + dec + ")";
}

std::string sci4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// ---- selftest fixtures -------------------------------------------------

struct SelfTest {
    int passed = 0;
    int failed = 0;

    void check(const std::string& name, bool ok) {
        if (ok) {
            ++passed;
            std::printf("ok   %s\n", name.c_str());
        } else {
            ++failed;
            std::printf("FAIL %s\n", name.c_str());
        }
    }
};

int run_selftest() {
    SelfTest t;
    auto gen = [](std::initializer_list<u64> e) { return poly_from_exponents(e); };

    t.check("period fast-8 = 127", period(fast_poly(8)).value == 127);
    t.check("period fast-12 = 595", period(fast_poly(12)).value == 595);
    t.check("period fast-16 = 32767", period(fast_poly(16)).value == 32767);
    t.check("period fast-32 = 2097151", period(fast_poly(32)).value == 2097151);
    t.check("period trinomial-8 = 63", period(trinomial(8)).value == 63);
    t.check("period trinomial-16 = 255", period(trinomial(16)).value == 255);
    t.check("period trinomial-32 = 1023", period(trinomial(32)).value == 1023);
    t.check("period trinomial-64 = 4095", period(trinomial(64)).value == 4095);
    t.check("period x11+x2+1 = 2047", period(gen({11, 2, 0})).value == 2047);
    t.check("period x12+x3+x+1 = 2046", period(gen({12, 3, 1, 0})).value == 2046);
    t.check("order fast-24 = 2^23-1", verify_period(fast_poly(24), (u64{1} << 23) - 1));
    t.check("order fast-48 = 2^47-1", verify_period(fast_poly(48), (u64{1} << 47) - 1));
    t.check("order fast-64 = (2^63-1)/7",
            verify_period(fast_poly(64), ((u64{1} << 63) - 1) / 7));
    t.check("order x31+x3+1 = 2^31-1", verify_period(gen({31, 3, 0}), (u64{1} << 31) - 1));
    t.check("order x32+x4+x+1 = 2^31-1", verify_period(gen({32, 4, 1, 0}), (u64{1} << 31) - 1));

    {
        std::vector<std::uint8_t> one{0x01};
        CrcSpec f16 = make_spec(fast_poly(16), 8, Technique::low_terms);
        t.check("check fast-16 of 0x01 = 0x0007",
                crc_check(f16, frame_message(one, 8)) == 0x0007);
        CrcSpec f8 = make_spec(fast_poly(8), 8);
        t.check("check fast-8 of 0x01 = 0x07", crc_check(f8, frame_message(one, 8)) == 0x07);
    }

    t.check("four-entry table height 16",
            build_fast_table(16, 16).tables[0] == std::vector<u64>{0x0, 0xc007, 0x8009, 0x400e});
    t.check("height-free table", build_fast_table_improved(40).tables[0] ==
                                     std::vector<u64>{0x0, 0x7, 0x9, 0xe});
    t.check("partial table for 0x10006c001",
            build_mixed_table(gen({32, 18, 17, 15, 14, 0}), 16, 2).tables[0] ==
                std::vector<u64>{0x0, 0x8006c001, 0xb4003, 0x800d8002});

    t.check("e_basic(16,16) = 45.5", e_basic(16, 16) == Rat(91, 2));
    t.check("e_fast(16,16) = 6", e_fast(16, 16) == Rat(6));
    t.check("e_basic(8,16) = 48", e_basic(8, 16) == Rat(48));
    t.check("e_fast(8,16) = 10", e_fast(8, 16) == Rat(10));
    t.check("e_fast(64,64) = 1.5", e_fast(64, 64) == Rat(3, 2));
    t.check("ratio crc-64-iso s=32 = 15",
            e_new_general(gen({64, 4, 3, 1, 0}), 32).ratio == Rat(15));
    t.check("ratio ccitt s=8 = 48/32",
            e_new_general(gen({16, 12, 5, 0}), 8).ratio == Rat(48, 32));
    t.check("ratio ieee s=16 = 92/85",
            e_new_general(gen({32, 26, 23, 22, 16, 12, 11, 10, 8, 7, 5, 4, 2, 1, 0}), 16).ratio ==
                Rat(92, 85));

    t.check("l4 of 0x1001f = 17", lm_search(gen({16, 4, 3, 2, 1, 0}), 4, 200).v == 17);
    t.check("l4 of 0x1011b = 115", lm_search(gen({16, 8, 4, 3, 1, 0}), 4, 200).v == 115);
    t.check("l4 of 0x111 family = 14", lm_search(gen({8, 4, 3, 2, 0}), 4, 100).v == 14);
    t.check("l3 of 0x11d family = 21", lm_search(gen({8, 4, 3, 2, 0}), 3, 100).v == 21);
    t.check("l4 of 0x1000135 = 691", lm_search(gen({24, 8, 5, 4, 2, 0}), 4, 1000).v == 691);

    t.check("w4 len 10 of fast-8 = 3", weight_count(gen({8, 2, 1, 0}), 10, 4).v == 3);
    t.check("w4 len 20 of fast-8 = 39", weight_count(gen({8, 2, 1, 0}), 20, 4).v == 39);
    t.check("w6 len 20 of fast-8 = 287", weight_count(gen({8, 2, 1, 0}), 20, 6).v == 287);
    t.check("w4 len 100 of fast-16 = 679", weight_count(gen({16, 2, 1, 0}), 100, 4).v == 679);
    t.check("w4 len 100 of fast-64 = 71", weight_count(gen({64, 2, 1, 0}), 100, 4).v == 71);

    {
        ExtendedCodeSpec h3 = make_extended_spec(trinomial(3));
        bool ok = true;
        int weights[9] = {0};
        for (u64 msg = 0; msg < 16; ++msg) {
            MessageFrame f;
            f.s = 4;
            f.tuples = {msg};
            f.bit_length = 4;
            u64 p = extended_check(h3, f);
            Poly v = (Poly::from_u64(msg) << 4) ^ Poly::from_u64(p);
            if (v.weight() > 8) ok = false;
            else ++weights[v.weight()];
        }
        ok = ok && weights[0] == 1 && weights[4] == 14 && weights[8] == 1;
        t.check("parity-extended trinomial-3 is the (8,4,4) code", ok);
    }

    std::printf("passed=%d failed=%d\n", t.passed, t.failed);
    return t.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fast CRC toolkit: checks, tables, error-detection analysis, cost model"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");

    std::string poly_hex, input = "-", technique = "basic";
    int s = 8, m_tables = 1, error_count = 4, max_m = 4, split = 2, jobs = 0, kparts = 2;
    u64 bits = 0, length = 0, cap = default_period_cap;
    u64 l3_cap = default_l3_cap, l4_cap = default_l4_cap, l6_cap = 1024;
    u64 budget = default_count_budget, limit = 0;
    double pr = -1.0;
    bool unrolled = false, records = false, improved = false, use_fast = false, use_mixed = false;
    std::vector<int> m_list;
    int height = 16, weight = 6, sort_m = 4;

    auto* compute = app.add_subcommand("compute", "check value of a message");
    compute->add_option("--poly", poly_hex, "generator polynomial, hex")->required();
    compute->add_option("--s", s, "tuple width in bits")->check(CLI::Range(1, 64));
    compute->add_option("--technique", technique, "basic|new|table|fasttable");
    compute->add_option("--m", m_tables, "table count for --technique table");
    compute->add_option("--bits", bits, "message length in bits (default 8*bytes)");
    compute->add_flag("--table{table},--bitwise{basic}", technique,
                      "shorthand for --technique");
    compute->add_option("input", input, "input file or - for stdin");

    auto* period_cmd = app.add_subcommand("period", "multiplicative order of X");
    period_cmd->add_option("--poly", poly_hex)->required();
    period_cmd->add_option("--cap", cap, "iteration bound");
    u64 verify_value = 0;
    period_cmd->add_option("--verify", verify_value, "check a claimed period instead");

    auto* dmin = app.add_subcommand("dmin", "guaranteed minimum distance at a length");
    dmin->add_option("--poly", poly_hex)->required();
    dmin->add_option("--len", length, "total code length in bits")->required();
    dmin->add_option("--max-m", max_m, "profile depth");
    dmin->add_option("--l3-cap", l3_cap);
    dmin->add_option("--l4-cap", l4_cap);

    auto* weights_cmd = app.add_subcommand("weights", "codeword weight counts");
    weights_cmd->add_option("--poly", poly_hex)->required();
    weights_cmd->add_option("--len", length)->required();
    weights_cmd->add_option("--m", m_list, "weights to count")->required();
    weights_cmd->add_option("--budget", budget);
    weights_cmd->add_option("--p", pr, "also estimate the undetected-error probability");

    auto* cost = app.add_subcommand("cost", "analytic operation counts per input byte");
    cost->add_option("--poly", poly_hex)->required();
    cost->add_option("--s", s)->check(CLI::Range(1, 64));
    cost->add_flag("--unrolled", unrolled);
    cost->add_flag("--split-view", use_mixed, "price the split-register kernel at s <= h");

    auto* tables_cmd = app.add_subcommand("tables", "dump reduction tables as hex");
    tables_cmd->add_option("--poly", poly_hex, "generator (multi/mixed tables)");
    tables_cmd->add_option("--s", s)->check(CLI::Range(1, 64));
    tables_cmd->add_option("--m", m_tables, "table count (multi)");
    tables_cmd->add_option("--h", height, "check width (fast tables)");
    tables_cmd->add_flag("--fast", use_fast, "four-entry family table");
    tables_cmd->add_flag("--improved", improved, "height-free four-entry table");
    tables_cmd->add_option("--split", split, "top width (mixed table)");
    bool mixed_flag = false;
    tables_cmd->add_flag("--mixed", mixed_flag, "partial table plus shift-xor");

    auto* search = app.add_subcommand("search", "enumerate generators, CSV output");
    search->add_option("--h", height)->required();
    search->add_option("--weight", weight)->required();
    search->add_option("--ms", m_list, "which limits to compute");
    search->add_option("--sort", sort_m, "sort key l_m");
    search->add_option("--l2-cap", cap);
    search->add_option("--l3-cap", l3_cap);
    search->add_option("--l4-cap", l4_cap);
    search->add_option("--l6-cap", l6_cap);
    search->add_flag("--records", records, "keep rows whose key strictly improves");
    search->add_option("--limit", limit, "maximum rows");
    search->add_option("--jobs", jobs);

    auto* parallel_cmd = app.add_subcommand("parallel", "split, check in parts, recombine");
    parallel_cmd->add_option("--poly", poly_hex)->required();
    parallel_cmd->add_option("--s", s)->check(CLI::Range(1, 64));
    parallel_cmd->add_option("--k", kparts, "number of parts")->check(CLI::Range(1, 4096));
    parallel_cmd->add_option("--technique", technique);
    parallel_cmd->add_option("--jobs", jobs);
    parallel_cmd->add_option("--bits", bits);
    parallel_cmd->add_option("input", input);

    auto* selftest = app.add_subcommand("selftest", "run the golden-value fixtures");
    for (CLI::App* sub : app.get_subcommands({})) sub->set_help_flag("--help", "print help");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(compute)) {
            Poly gen = parse_poly_arg(poly_hex);
            if (gen.degree() < 3) throw CLI::ValidationError("--poly", "degree must be >= 3");
            std::vector<std::uint8_t> data = read_input(input);
            std::optional<u64> nbits;
            if (compute->count("--bits")) nbits = bits;
            MessageFrame frame = frame_message(data, s, nbits);
            if (gen.degree() > 64) {
                // word-pair registers stop at degree 64; wide generators go
                // through the vector-arithmetic path
                if (parse_technique(technique) != Technique::basic)
                    throw std::runtime_error("degrees above 64 support --technique basic only");
                std::printf("crc=%s\n", crc_check_ref(gen, s, frame).to_hex().c_str());
            } else {
                CrcSpec spec = make_spec(gen, s, parse_technique(technique), m_tables);
                std::printf("crc=%s\n", check_hex(crc_check(spec, frame), spec.h).c_str());
            }
        } else if (app.got_subcommand(period_cmd)) {
            Poly gen = parse_poly_arg(poly_hex);
            if (period_cmd->count("--verify")) {
                std::printf("verified=%s\n", verify_period(gen, verify_value) ? "yes" : "no");
            } else {
                PeriodResult r = period(gen, cap);
                switch (r.kind) {
                    case PeriodResult::Kind::found:
                        std::printf("period=%" PRIu64 "\n", r.value);
                        break;
                    case PeriodResult::Kind::no_period:
                        std::printf("period=no-period\n");
                        break;
                    case PeriodResult::Kind::cap_exceeded:
                        std::printf("period=cap-exceeded\n");
                        break;
                }
            }
        } else if (app.got_subcommand(dmin)) {
            Poly gen = parse_poly_arg(poly_hex);
            DetectionProfile profile = build_profile(gen, max_m, l3_cap, l4_cap, 1);
            for (const auto& [m, lim] : profile.l)
                std::printf("l%d=%s\n", m, limit_str(lim).c_str());
            DminResult r = dmin_at_length(profile, length);
            std::printf("dmin=%d\n", r.dmin);
            if (r.needs_more) std::printf("needs-more-search=yes\n");
        } else if (app.got_subcommand(weights_cmd)) {
            Poly gen = parse_poly_arg(poly_hex);
            WeightDistribution wd;
            wd.generator = gen;
            wd.length = length;
            for (int m : m_list) {
                CountResult c = weight_count(gen, length, m, budget, 1);
                if (c.has_value()) {
                    std::printf("w%d=%" PRIu64 "\n", m, c.v);
                    wd.counts[m] = c.v;
                } else {
                    std::printf("w%d=exceeds-bound\n", m);
                }
            }
            if (pr >= 0.0) {
                Probability pu = undetected_error_probability(wd, pr);
                std::printf("pu=%s%s\n", sci4(pu.value).c_str(),
                            pu.lower_bound ? " (lower bound)" : "");
                if (!wd.counts.empty()) {
                    auto first = *wd.counts.begin();
                    std::printf("pu_first_order=%s\n",
                                sci4(first_order_estimate(static_cast<double>(first.second),
                                                          first.first, pr))
                                    .c_str());
                }
            }
        } else if (app.got_subcommand(cost)) {
            Poly gen = parse_poly_arg(poly_hex);
            CostReport r = use_mixed ? e_new_general_split(gen, s) : e_new_general(gen, s);
            std::printf("eb=%s\n", rat_field(r.e_b).c_str());
            std::printf("e=%s\n", rat_field(r.e).c_str());
            std::printf("ratio=%s\n", rat_field(r.ratio).c_str());
            std::printf("case=%s\n", r.case_label.c_str());
            std::printf("g=%s\n", format_u128(r.g).c_str());
            if (unrolled)
                std::printf("eb_unrolled=%s\n",
                            rat_field(e_basic(s, static_cast<int>(gen.degree()), true)).c_str());
        } else if (app.got_subcommand(tables_cmd)) {
            LookupTableSet ts;
            if (improved) ts = build_fast_table_improved(height);
            else if (use_fast) ts = build_fast_table(height, s);
            else if (mixed_flag) ts = build_mixed_table(parse_poly_arg(poly_hex), s, split);
            else ts = build_multi_tables(parse_poly_arg(poly_hex), s, m_tables);
            for (size_t i = 0; i < ts.tables.size(); ++i) {
                if (ts.tables.size() > 1) std::printf("table %zu\n", i);
                for (size_t j = 0; j < ts.tables[i].size(); ++j)
                    std::printf("%zu: %s\n", j, Poly::from_u64(ts.tables[i][j]).to_hex().c_str());
            }
        } else if (app.got_subcommand(search)) {
            SearchOptions opts;
            opts.h = height;
            opts.weight = weight;
            opts.ms = m_list;
            opts.sort_m = sort_m;
            opts.l2_cap = cap;
            opts.l3_cap = l3_cap;
            opts.l4_cap = l4_cap;
            opts.l6_cap = l6_cap;
            opts.records_only = records;
            if (search->count("--limit")) opts.limit = limit;
            opts.threads = jobs;
            SearchResult r = search_generators(opts);
            std::printf("poly_hex,l2,l3,l4,l6\n");
            for (const auto& row : r.rows) {
                std::string cells[4];
                int ms[4] = {2, 3, 4, 6};
                for (int i = 0; i < 4; ++i) {
                    auto it = row.l.find(ms[i]);
                    cells[i] = it == row.l.end() ? "" : limit_str(it->second);
                }
                std::printf("%s,%s,%s,%s,%s\n", row.f.to_hex().c_str(), cells[0].c_str(),
                            cells[1].c_str(), cells[2].c_str(), cells[3].c_str());
            }
            if (r.truncated) std::fprintf(stderr, "note: row limit reached\n");
        } else if (app.got_subcommand(parallel_cmd)) {
            Poly gen = parse_poly_arg(poly_hex);
            CrcSpec spec = make_spec(gen, s, parse_technique(technique), m_tables);
            std::vector<std::uint8_t> data = read_input(input);
            std::optional<u64> nbits;
            if (parallel_cmd->count("--bits")) nbits = bits;
            MessageFrame frame = frame_message(data, s, nbits);
            u64 k = static_cast<u64>(kparts);
            if (k > frame.n()) k = frame.n();
            std::vector<u64> parts(k, frame.n() / k);
            for (u64 i = 0; i < frame.n() % k; ++i) ++parts[i];
            u64 par = parallel_check(spec, frame, parts, jobs);
            u64 seq = crc_check(spec, frame);
            std::printf("crc=%s sequential=%s match=%s\n", check_hex(par, spec.h).c_str(),
                        check_hex(seq, spec.h).c_str(), par == seq ? "yes" : "no");
            if (par != seq) return 1;
        } else if (app.got_subcommand(selftest)) {
            return run_selftest();
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
