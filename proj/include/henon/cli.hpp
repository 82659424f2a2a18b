#pragma once

#include <map>
#include <string>
#include <vector>

namespace henon::cli {

// flat key = value configuration; unknown keys are rejected
class RunConfig {
public:
    RunConfig();  // all defaults

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string to_text() const;

    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    double number(const std::string& key) const;
    long integer(const std::string& key) const;
    bool flag(const std::string& key) const;

    static std::vector<std::string> keys();
    static bool known(const std::string& key);

    friend bool operator==(const RunConfig& a, const RunConfig& b) { return a.values_ == b.values_; }

private:
    std::map<std::string, std::string> values_;
};

// exit codes: 0 all assertions pass, 1 an assertion failed, 2 configuration error
int run(int argc, char** argv);

}  // namespace henon::cli
