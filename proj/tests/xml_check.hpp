#pragma once

// Minimal XML well-formedness check for the SVG renderer: balanced and
// properly nested elements, quoted attributes, known entities only.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace xml_check {

inline bool entity_ok(std::string_view s, std::size_t& i)
{
    for (std::string_view e : {"&amp;", "&lt;", "&gt;", "&quot;", "&apos;"}) {
        if (s.substr(i, e.size()) == e) {
            i += e.size();
            return true;
        }
    }
    return false;
}

inline bool is_name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

/// Returns an empty string when `doc` is well formed, otherwise a reason.
inline std::string well_formed(std::string_view doc)
{
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool seen_root = false;
    if (doc.substr(0, 5) == "<?xml") {
        const auto end = doc.find("?>");
        if (end == std::string_view::npos)
            return "unterminated declaration";
        i = end + 2;
    }
    while (i < doc.size()) {
        const char c = doc[i];
        if (c == '&') {
            if (!entity_ok(doc, i))
                return "bad entity at " + std::to_string(i);
            continue;
        }
        if (c != '<') {
            if (stack.empty() && !std::isspace(static_cast<unsigned char>(c)))
                return "text outside root";
            ++i;
            continue;
        }
        ++i;
        const bool closing = i < doc.size() && doc[i] == '/';
        if (closing)
            ++i;
        const std::size_t name_start = i;
        while (i < doc.size() && is_name_char(doc[i]))
            ++i;
        const std::string name(doc.substr(name_start, i - name_start));
        if (name.empty())
            return "empty tag name at " + std::to_string(name_start);
        if (closing) {
            while (i < doc.size() && std::isspace(static_cast<unsigned char>(doc[i])))
                ++i;
            if (i >= doc.size() || doc[i] != '>')
                return "bad closing tag " + name;
            ++i;
            if (stack.empty() || stack.back() != name)
                return "mismatched </" + name + ">";
            stack.pop_back();
            continue;
        }
        if (stack.empty() && seen_root)
            return "second root element";
        seen_root = true;
        for (;;) {
            while (i < doc.size() && std::isspace(static_cast<unsigned char>(doc[i])))
                ++i;
            if (i >= doc.size())
                return "unterminated tag " + name;
            if (doc[i] == '>') {
                ++i;
                stack.push_back(name);
                break;
            }
            if (doc.substr(i, 2) == "/>") {
                i += 2;
                break;
            }
            const std::size_t attr_start = i;
            while (i < doc.size() && is_name_char(doc[i]))
                ++i;
            if (i == attr_start || i >= doc.size() || doc[i] != '=')
                return "bad attribute in " + name;
            ++i;
            if (i >= doc.size() || (doc[i] != '"' && doc[i] != '\''))
                return "unquoted attribute in " + name;
            const char q = doc[i++];
            while (i < doc.size() && doc[i] != q) {
                if (doc[i] == '<')
                    return "'<' in attribute of " + name;
                if (doc[i] == '&') {
                    if (!entity_ok(doc, i))
                        return "bad entity in attribute of " + name;
                    continue;
                }
                ++i;
            }
            if (i >= doc.size())
                return "unterminated attribute in " + name;
            ++i;
        }
    }
    if (!stack.empty())
        return "unclosed <" + stack.back() + ">";
    if (!seen_root)
        return "no root element";
    return {};
}

}  // namespace xml_check
