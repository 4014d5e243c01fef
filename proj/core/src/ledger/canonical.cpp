// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/canonical.hpp>

#include <charconv>
#include <cmath>

namespace marksim::ledger
{
namespace
{
void append_string(std::string& out, const std::string& s)
{
    try
    {
        out += nlohmann::json(s).dump();
    }
    catch (const nlohmann::json::type_error& e)
    {
        throw Error("NON_SERIALIZABLE", e.what());
    }
}

void encode(std::string& out, const nlohmann::json& v)
{
    using value_t = nlohmann::json::value_t;
    switch (v.type())
    {
    case value_t::null:
        out += "null";
        return;
    case value_t::boolean:
        out += v.get<bool>() ? "true" : "false";
        return;
    case value_t::number_integer:
        out += std::to_string(v.get<std::int64_t>());
        return;
    case value_t::number_unsigned:
        out += std::to_string(v.get<std::uint64_t>());
        return;
    case value_t::number_float: {
        const double d = v.get<double>();
        if (!std::isfinite(d))
            throw Error("NON_SERIALIZABLE", "non-finite number");
        char buf[64];
        const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
        if (ec != std::errc{})
            throw Error("NON_SERIALIZABLE", "number formatting failed");
        out.append(buf, end);
        return;
    }
    case value_t::string:
        append_string(out, v.get_ref<const std::string&>());
        return;
    case value_t::array: {
        out.push_back('[');
        bool first = true;
        for (const auto& item : v)
        {
            if (!first)
                out.push_back(',');
            first = false;
            encode(out, item);
        }
        out.push_back(']');
        return;
    }
    case value_t::object: {
        out.push_back('{');
        bool first = true;
        for (const auto& [key, item] : v.items())
        {
            if (!first)
                out.push_back(',');
            first = false;
            append_string(out, key);
            out.push_back(':');
            encode(out, item);
        }
        out.push_back('}');
        return;
    }
    case value_t::binary:
    case value_t::discarded:
        break;
    }
    throw Error("NON_SERIALIZABLE", "value has no JSON representation");
}

}  // namespace

std::string canonical_encoding(const nlohmann::json& doc)
{
    std::string out;
    encode(out, doc);
    return out;
}

Hash canonical_digest(const nlohmann::json& doc)
{
    return sha256(canonical_encoding(doc));
}

}  // namespace marksim::ledger
