#pragma once
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcalc {

struct SourcePos {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
};

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text; always carries a position.
class ParseError : public Error {
  public:
    ParseError(SourcePos pos, const std::string& msg)
        : Error(format(pos, msg)), pos_(pos), message_(msg) {}
    SourcePos pos() const { return pos_; }
    const std::string& message() const { return message_; }

  private:
    static std::string format(SourcePos pos, const std::string& msg) {
        std::ostringstream os;
        os << "line " << pos.line << ", col " << pos.col << ": " << msg;
        return os.str();
    }
    SourcePos pos_;
    std::string message_;
};

// Numeric domain failure during evaluation (division by zero value,
// log/sqrt of a nonpositive value, invalid power).  Sample-point runners
// catch these and record the point as skipped.
class EvalError : public Error {
  public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

// Metric not invertible (or declared signature inconsistent) at a point.
class DegenerateMetricError : public EvalError {
  public:
    DegenerateMetricError(const std::string& msg, std::vector<double> point)
        : EvalError(msg + at(point)), point_(std::move(point)) {}
    const std::vector<double>& point() const { return point_; }

  private:
    static std::string at(const std::vector<double>& p) {
        std::ostringstream os;
        os << " at point (";
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
        os << ")";
        return os.str();
    }
    std::vector<double> point_;
};

// API misuse: mismatched dims/orders, bad slot index, wrong tensor rank.
class ArgumentError : public Error {
  public:
    explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

}  // namespace tcalc
