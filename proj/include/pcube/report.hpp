#pragma once

#include <string>
#include <vector>

namespace pcube {

/// One verification outcome. `section` groups related checks
/// (e.g. "identities/heisenberg"), `detail` carries the computed value.
struct Check {
    std::string section;
    std::string name;
    bool passed = false;
    std::string detail;
};

class Report {
public:
    void add(std::string section, std::string name, bool passed, std::string detail = {})
    {
        checks_.push_back({std::move(section), std::move(name), passed, std::move(detail)});
    }
    void append(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }
    void append(const std::vector<Check>& other) { checks_.insert(checks_.end(), other.begin(), other.end()); }

    const std::vector<Check>& checks() const { return checks_; }
    std::size_t size() const { return checks_.size(); }
    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : checks_)
            n += c.passed ? 0 : 1;
        return n;
    }
    bool all_passed() const { return failures() == 0; }

private:
    std::vector<Check> checks_;
};

} // namespace pcube
