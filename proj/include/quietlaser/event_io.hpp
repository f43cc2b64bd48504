#pragma once

// CSV export/import of event trains: '#'-prefixed header lines carrying
// key=value metadata, a column line "t", then one timestamp per line.
// Numbers are written in shortest round-trip form.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "renewal.hpp"

namespace quietlaser {

inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return {buf, res.ptr};
}

inline double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("parse_double: bad number '" + std::string(s) + "'");
    return v;
}

inline void write_event_train(std::ostream& os, const EventTrain& train)
{
    os << "# quietlaser event train\n";
    os << "# seed=" << train.seed << '\n';
    os << "# horizon=" << format_double(train.horizon) << '\n';
    for (const auto& [key, value] : train.parameters)
        os << "# " << key << '=' << format_double(value) << '\n';
    os << "t\n";
    for (double t : train.timestamps) os << format_double(t) << '\n';
}

inline EventTrain read_event_train(std::istream& is)
{
    EventTrain train;
    bool have_horizon = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string_view key(line.data() + 1, eq - 1);
            while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
            const std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
            if (key == "seed") {
                std::uint64_t seed = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), seed);
                if (res.ec != std::errc())
                    throw std::runtime_error("read_event_train: bad seed");
                train.seed = seed;
            } else if (key == "horizon") {
                train.horizon = parse_double(value);
                have_horizon = true;
            } else {
                train.parameters.emplace_back(std::string(key), parse_double(value));
            }
            continue;
        }
        if (line == "t") continue;
        train.timestamps.push_back(parse_double(line));
    }
    if (!have_horizon)
        throw std::runtime_error("read_event_train: missing horizon header");
    if (!train.valid())
        throw std::runtime_error("read_event_train: timestamps not increasing or outside [0, horizon]");
    return train;
}

inline void save_event_train(const std::string& path, const EventTrain& train)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_event_train(os, train);
}

inline EventTrain load_event_train(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_event_train(is);
}

}  // namespace quietlaser
