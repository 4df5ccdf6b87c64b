// Experiment runner: builds symbols from config, runs solver/prediction
// sweeps over a size ladder with a bounded worker pool, and emits
// machine-readable CSV/JSON rows. Output is deterministic for a given
// (config, seed): rows are computed independently, gathered, and sorted.
#ifndef CIRCINV_EXPERIMENT_HPP
#define CIRCINV_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "circinv/symbol.hpp"

namespace circinv {

struct ExperimentConfig {
    GegenbauerSymbol symbol;
    std::vector<int> sizes;              // strictly increasing
    double x = 0.5;                      // first-column fraction, in (0,1)
    std::vector<std::pair<double, double>> pairs;  // optional (x, y) entry rules
    std::string formula = "deux";        // deux|coef|coef2|demi|toep1|toep2|gegen
    double tol_envelope = 0.10;
    unsigned seed = 1;
    bool timings = false;                // off by default: keeps output bytes reproducible

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    void validate() const;
};

struct ResultRow {
    int N = 0;
    int k = 0;
    int l = -1;  // -1 for first-column rows
    double exact_re = 0.0;
    double exact_im = 0.0;
    double pred = 0.0;
    double env_exact = 0.0;
    double env_pred = 0.0;
    double rel_env_err = 0.0;
    std::string status = "ok";
    long ms = 0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::string to_csv() const;   // header: N,k,l,exact_re,exact_im,pred,env_exact,env_pred,rel_env_err,status,ms
    std::string to_json() const;
};

// Runs the sweep on `threads` workers; the output is byte-identical across
// thread counts and repeated runs (row errors are recorded per row, never
// aborting the sweep).
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads);

std::vector<ResultRow> parse_csv(const std::string& text);  // round-trip reader

}  // namespace circinv

#endif
