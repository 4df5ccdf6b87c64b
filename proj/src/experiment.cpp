#include "circinv/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "circinv/asymptotics.hpp"
#include "circinv/toeplitz.hpp"

namespace circinv {

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    ExperimentConfig cfg;
    if (!j.contains("symbol")) throw ConfigError("config: missing 'symbol' object");
    cfg.symbol = GegenbauerSymbol::from_json_text(j["symbol"].dump());
    if (!j.contains("sizes")) throw ConfigError("config: missing 'sizes' array");
    cfg.sizes = j["sizes"].get<std::vector<int>>();
    cfg.x = j.value("x", 0.5);
    if (j.contains("pairs")) {
        for (const auto& p : j["pairs"]) {
            if (!p.is_array() || p.size() != 2) throw ConfigError("config: pairs must be [x, y]");
            cfg.pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    cfg.formula = j.value("formula", std::string("deux"));
    cfg.tol_envelope = j.value("tol_envelope", 0.10);
    cfg.seed = j.value("seed", 1u);
    cfg.timings = j.value("timings", false);
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void ExperimentConfig::validate() const {
    if (sizes.empty()) throw ConfigError("config: sizes must be non-empty");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw ConfigError("config: sizes must be strictly increasing");
    if (!(x > 0.0) || !(x < 1.0)) throw ConfigError("config: x must lie in (0, 1)");
    for (const auto& [a, b] : pairs) {
        if (!(a > 0.0) || !(a < 1.0) || !(b > 0.0) || !(b < 1.0))
            throw ConfigError("config: pair fractions must lie in (0, 1)");
        if (a == b) throw ConfigError("config: pair fractions must differ");
    }
    static const char* known[] = {"deux", "coef", "coef2", "demi", "toep1", "toep2", "gegen"};
    bool ok = false;
    for (const auto* f : known) ok = ok || formula == f;
    if (!ok) throw ConfigError("config: unknown formula selector '" + formula + "'");
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Job {
    int N;
    int k;
    int l;  // -1 for column rows
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    // per-size exact data (first column; shared across rows)
    std::map<int, std::vector<double>> columns;
    for (int N : cfg.sizes) {
        auto sys = build_system(cfg.symbol, N);
        auto col = first_column_inverse(sys);
        std::vector<double> re(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) re[i] = col[i].real();
        columns[N] = std::move(re);
    }

    std::vector<Job> jobs;
    for (int N : cfg.sizes) {
        if (cfg.pairs.empty()) {
            jobs.push_back({N, static_cast<int>(std::lround(cfg.x * N)), -1});
        } else {
            for (const auto& [a, b] : cfg.pairs)
                jobs.push_back({N, static_cast<int>(std::lround(a * N)),
                                static_cast<int>(std::lround(b * N))});
        }
    }

    std::vector<ResultRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& jb = jobs[i];
            ResultRow row;
            row.N = jb.N;
            row.k = jb.k;
            row.l = jb.l;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto& col = columns.at(jb.N);
                if (jb.l < 0) {
                    // exact sequence: first column entries, or delta_j of Phi_N
                    // for the gegen selector (delta_j = col[N-j]/col[0])
                    const bool gegen = cfg.formula == "gegen";
                    std::vector<double> exact(col.size());
                    for (std::size_t i = 0; i < col.size(); ++i)
                        exact[i] = gegen ? col[jb.N - i] / col[0] : col[i];
                    row.exact_re = exact[jb.k];
                    std::vector<double> pred(col.size(), 0.0);
                    const int w = envelope_window(cfg.symbol.theta0);
                    const int lo = std::max(1, jb.k - w), hi = std::min<int>(col.size() - 2, jb.k + w);
                    for (int k = lo; k <= hi; ++k) {
                        if (cfg.formula == "deux")
                            pred[k] = predict_first_column(cfg.symbol, k, jb.N);
                        else if (cfg.formula == "coef")
                            pred[k] = predict_first_column_via_baseline(cfg.symbol, k, jb.N,
                                                                        FirstColumnBaseline::exact);
                        else if (cfg.formula == "coef2")
                            pred[k] = predict_small_k(cfg.symbol, k, jb.N).real();
                        else if (cfg.formula == "demi")
                            pred[k] = predict_half(cfg.symbol, k, jb.N);
                        else if (gegen)
                            pred[k] = predict_gegenbauer_coeff(cfg.symbol, k, jb.N, col[0]);
                        else
                            throw ConfigError("formula needs a pair rule: " + cfg.formula);
                    }
                    row.pred = pred[jb.k];
                    const int k0 = std::clamp<int>(jb.k - w / 2, 1,
                                                   std::max<int>(1, exact.size() - w - 1));
                    const auto fe = fit_envelope(exact, k0, w, cfg.symbol.theta0);
                    const auto fp = fit_envelope(pred, k0, w, cfg.symbol.theta0);
                    row.env_exact = fe.amplitude;
                    row.env_pred = fp.amplitude;
                    row.rel_env_err = std::abs(fe.amplitude - fp.amplitude) /
                                      std::max(fe.amplitude, 1e-300);
                } else {
                    // entry rule: exact via predictor reconstruction
                    auto sys = build_system(cfg.symbol, jb.N);
                    auto p = predictor(sys);
                    const cplx exact = gs_entry(p, jb.k, jb.l);
                    row.exact_re = exact.real();
                    row.exact_im = exact.imag();
                    if (cfg.formula == "toep1")
                        row.pred = predict_inverse_entry(cfg.symbol, jb.k, jb.l, jb.N,
                                                         EntryBaseline::exact);
                    else if (cfg.formula == "toep2")
                        row.pred = predict_inverse_entry(cfg.symbol, jb.k, jb.l, jb.N,
                                                         EntryBaseline::kernel);
                    else
                        throw ConfigError("pair rule needs toep1|toep2");
                    row.env_exact = std::abs(exact);
                    row.env_pred = std::abs(row.pred);
                    row.rel_env_err =
                        std::abs(std::abs(exact) - std::abs(row.pred)) /
                        std::max(std::abs(exact), 1e-300);
                }
            } catch (const std::exception& e) {
                row.status = std::string("error:") + e.what();
                row.status.erase(std::remove(row.status.begin(), row.status.end(), ','),
                                 row.status.end());
            }
            const auto t1 = std::chrono::steady_clock::now();
            row.ms = cfg.timings
                         ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                         : 0;
            rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::max(1, threads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.N, a.k, a.l) < std::tie(b.N, b.k, b.l);
    });
    ExperimentResult res;
    res.rows = std::move(rows);
    return res;
}

std::string ExperimentResult::to_csv() const {
    std::string out = "N,k,l,exact_re,exact_im,pred,env_exact,env_pred,rel_env_err,status,ms\n";
    for (const auto& r : rows) {
        out += std::to_string(r.N) + ',' + std::to_string(r.k) + ',' + std::to_string(r.l) + ',';
        out += fmt_double(r.exact_re) + ',' + fmt_double(r.exact_im) + ',' + fmt_double(r.pred) +
               ',';
        out += fmt_double(r.env_exact) + ',' + fmt_double(r.env_pred) + ',' +
               fmt_double(r.rel_env_err) + ',';
        out += r.status + ',' + std::to_string(r.ms) + '\n';
    }
    return out;
}

std::string ExperimentResult::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        o["N"] = r.N;
        o["k"] = r.k;
        o["l"] = r.l;
        o["exact_re"] = r.exact_re;
        o["exact_im"] = r.exact_im;
        o["pred"] = r.pred;
        o["env_exact"] = r.env_exact;
        o["env_pred"] = r.env_pred;
        o["rel_env_err"] = r.rel_env_err;
        o["status"] = r.status;
        o["ms"] = r.ms;
        j.push_back(std::move(o));
    }
    return j.dump(2);
}

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::vector<ResultRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("parse_csv: empty input");
    if (line != "N,k,l,exact_re,exact_im,pred,env_exact,env_pred,rel_env_err,status,ms")
        throw ConfigError("parse_csv: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ResultRow r;
        auto next_tok = [&]() {
            if (!std::getline(ls, tok, ',')) throw ConfigError("parse_csv: short row");
            return tok;
        };
        r.N = std::stoi(next_tok());
        r.k = std::stoi(next_tok());
        r.l = std::stoi(next_tok());
        r.exact_re = std::stod(next_tok());
        r.exact_im = std::stod(next_tok());
        r.pred = std::stod(next_tok());
        r.env_exact = std::stod(next_tok());
        r.env_pred = std::stod(next_tok());
        r.rel_env_err = std::stod(next_tok());
        r.status = next_tok();
        r.ms = std::stol(next_tok());
        if (r.rel_env_err < 0.0 || !std::isfinite(r.exact_re))
            throw ConfigError("parse_csv: row violates its invariants");
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace circinv
