#pragma once
// Check records and JSONL report emission.
//
// Every verification run produces a stream of records, one per check:
//
//   {"id":..., "anchor":..., "inputs":..., "value":..., "residual":...,
//    "tol":..., "status":..., "ms":...}
//
// status is "pass" or "fail" for gating checks (|residual| <= tol) and
// "report" for report-only findings, which never affect the exit status.
// Numeric fields are printed with 17 significant digits so that report
// bodies are byte-identical across runs once the "ms" timing field is
// stripped.  Lines are emitted in insertion order; ids must be unique.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kleinian {

inline std::string fmt17(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if ((unsigned char)c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

struct CheckRecord {
    std::string id;      // unique slug for this check instance
    std::string anchor;  // which claim/identity the check exercises
    std::string inputs;  // human-readable parameter summary
    double value = 0;    // primary computed quantity
    double residual = 0; // deviation from the expected relation
    double tol = 0;      // gate threshold (0 for report-only)
    std::string status;  // pass | fail | report
    double ms = 0;       // wall time, excluded from determinism
};

class Reporter {
  public:
    // Gating check: pass iff |residual| <= tol.
    bool check(const std::string& id, const std::string& anchor,
               const std::string& inputs, double value, double residual,
               double tol, double ms = 0) {
        bool ok = std::abs(residual) <= tol && !std::isnan(residual);
        push({id, anchor, inputs, value, residual, tol,
              ok ? "pass" : "fail", ms});
        return ok;
    }

    // Report-only finding: recorded, never gates the exit status.
    void finding(const std::string& id, const std::string& anchor,
                 const std::string& inputs, double value, double residual,
                 double tol = 0, double ms = 0) {
        push({id, anchor, inputs, value, residual, tol, "report", ms});
    }

    const std::vector<CheckRecord>& records() const { return recs_; }

    int failures() const {
        int n = 0;
        for (const auto& r : recs_) n += r.status == "fail";
        return n;
    }
    int findings() const {
        int n = 0;
        for (const auto& r : recs_) n += r.status == "report";
        return n;
    }
    bool all_passed() const { return failures() == 0; }

    void write_jsonl(std::ostream& os) const {
        for (const auto& r : recs_) {
            os << "{\"id\":" << json_escape(r.id)
               << ",\"anchor\":" << json_escape(r.anchor)
               << ",\"inputs\":" << json_escape(r.inputs)
               << ",\"value\":" << fmt17(r.value)
               << ",\"residual\":" << fmt17(r.residual)
               << ",\"tol\":" << fmt17(r.tol)
               << ",\"status\":" << json_escape(r.status)
               << ",\"ms\":" << fmt17(r.ms) << "}\n";
        }
    }

    void summary(std::ostream& os) const {
        char line[256];
        for (const auto& r : recs_) {
            std::snprintf(line, sizeof line, "%-6s %-34s %12.5e  %.100s\n",
                          r.status.c_str(), r.id.c_str(), r.residual,
                          r.inputs.c_str());
            os << line;
        }
        std::snprintf(line, sizeof line,
                      "%d checks: %d pass, %d fail, %d report-only\n",
                      (int)recs_.size(),
                      (int)recs_.size() - failures() - findings(),
                      failures(), findings());
        os << line;
    }

  private:
    void push(CheckRecord r) {
        if (!ids_.insert(r.id).second)
            throw std::logic_error("duplicate check id: " + r.id);
        recs_.push_back(std::move(r));
    }
    std::vector<CheckRecord> recs_;
    std::set<std::string> ids_;
};

}  // namespace kleinian
