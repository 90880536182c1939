#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace covmin::io {

/// Rows of strings rendered either as aligned text or as CSV.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) {
        row.resize(header_.size());
        rows_.push_back(std::move(row));
    }
    std::size_t size() const { return rows_.size(); }

    void print_text(std::ostream& os) const {
        std::vector<std::size_t> w(header_.size());
        for (std::size_t c = 0; c < header_.size(); ++c) {
            w[c] = header_[c].size();
            for (const auto& r : rows_)
                w[c] = std::max(w[c], r[c].size());
        }
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c)
                    s += "  ";
                s += std::string(w[c] - r[c].size(), ' ') + r[c];
            }
            while (!s.empty() && s.back() == ' ')
                s.pop_back();
            os << s << '\n';
        };
        line(header_);
        std::vector<std::string> rule;
        for (auto x : w)
            rule.emplace_back(x, '-');
        line(rule);
        for (const auto& r : rows_)
            line(r);
    }

    void print_csv(std::ostream& os) const {
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c)
                    os << ',';
                os << quote(r[c]);
            }
            os << '\n';
        };
        line(header_);
        for (const auto& r : rows_)
            line(r);
    }

    void print(std::ostream& os, bool csv) const { csv ? print_csv(os) : print_text(os); }

    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"')
                out += '"';
            out += ch;
        }
        return out + "\"";
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace covmin::io
