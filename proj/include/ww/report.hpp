#ifndef WW_REPORT_HPP
#define WW_REPORT_HPP

#include <string>
#include <vector>
#include <ww/config.hpp>

namespace ww {

inline constexpr const char* code_version = "ww 0.1.0";

struct Verdict {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Verdict collection written as a JSON object with config hash, code
// version, tolerance metadata and free-form notes.
class ReportSink {
  public:
    ReportSink(std::string out_dir, const RunConfig& cfg);

    void add(const std::string& name, double value, double tolerance, bool pass);
    // pass criterion |value| <= tolerance
    void add_abs(const std::string& name, double value, double tolerance);
    void note(const std::string& text);

    bool all_pass() const;
    const std::vector<Verdict>& verdicts() const { return verdicts_; }

    void write_json(const std::string& filename) const;
    void print_summary() const;

  private:
    std::string dir_;
    const RunConfig& cfg_;
    std::vector<Verdict> verdicts_;
    std::vector<std::string> notes_;
};

// CSV writing with full-precision doubles; creates parent directories.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_full(double v);

void ensure_dir(const std::string& path);

} // namespace ww

#endif
