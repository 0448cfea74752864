#pragma once

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

/// Flat key = value configuration with [section] headers; # starts a comment.
class Config {
public:
    static Config parse(const std::string& text)
    {
        Config cfg;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigParseError("line " + std::to_string(lineno) +
                                           ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigParseError("line " + std::to_string(lineno) +
                                       ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigParseError("line " + std::to_string(lineno) +
                                       ": empty key");
            cfg.data_[section][key] = value;
        }
        return cfg;
    }

    bool has(const std::string& section, const std::string& key) const
    {
        const auto s = data_.find(section);
        return s != data_.end() && s->second.count(key) > 0;
    }

    std::string get_string(const std::string& section,
                           const std::string& key) const
    {
        const auto s = data_.find(section);
        if (s == data_.end() || !s->second.count(key))
            throw ConfigParseError("missing field `" + key + "` in section [" +
                                   section + "]");
        return s->second.at(key);
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const
    {
        return has(section, key) ? get_string(section, key) : fallback;
    }

    double get_double(const std::string& section, const std::string& key) const
    {
        return to_double(get_string(section, key), section, key);
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const
    {
        return has(section, key) ? get_double(section, key) : fallback;
    }

    int get_int(const std::string& section, const std::string& key) const
    {
        const std::string v = get_string(section, key);
        try {
            std::size_t pos = 0;
            const int r = std::stoi(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw ConfigParseError("field `" + key + "` in section [" +
                                   section + "] is not an integer: " + v);
        }
    }

    int get_int(const std::string& section, const std::string& key,
                int fallback) const
    {
        return has(section, key) ? get_int(section, key) : fallback;
    }

    /// Parse `[a, b, c]` style lists of reals.
    std::vector<double> get_list(const std::string& section,
                                 const std::string& key) const
    {
        std::string v = get_string(section, key);
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw ConfigParseError("field `" + key + "` in section [" +
                                   section + "] is not a [..] list");
        v = v.substr(1, v.size() - 2);
        std::vector<double> out;
        std::string item;
        std::istringstream in(v);
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            out.push_back(to_double(item, section, key));
        }
        return out;
    }

private:
    static std::string trim(const std::string& s)
    {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos)
            return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& v, const std::string& section,
                            const std::string& key)
    {
        try {
            std::size_t pos = 0;
            const double r = std::stod(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw ConfigParseError("field `" + key + "` in section [" +
                                   section + "] is not a number: " + v);
        }
    }

    std::map<std::string, std::map<std::string, std::string>> data_;
};

/// 17-significant-digit formatting for round-trip-exact CSV output.
inline std::string format_g17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace qsep
