#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fcrawl {

// strip parameters ("; charset=...") and lowercase
inline std::string normalize_mime(std::string_view raw) {
    auto semi = raw.find(';');
    std::string_view core = raw.substr(0, semi);
    while (!core.empty() && (core.front() == ' ' || core.front() == '\t')) core.remove_prefix(1);
    while (!core.empty() && (core.back() == ' ' || core.back() == '\t')) core.remove_suffix(1);
    std::string out(core);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

// the 38 MIME types that identify target documents
inline const std::vector<std::string>& default_target_mimes() {
    static const std::vector<std::string> kList = {
    "application/csv", "application/json",
    "application/msword", "application/octet-stream",
    "application/pdf", "application/rdf+xml",
    "application/rss+xml", "application/vnd.ms-excel",
    "application/vnd.ms-excel.sheet.macroenabled.12", "application/vnd.oasis.opendocument.presentation",
    "application/vnd.oasis.opendocument.spreadsheet", "application/vnd.oasis.opendocument.text",
    "application/vnd.openxmlformats-officedocument.presentationml.presentation", "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
    "application/vnd.openxmlformats-officedocument.wordprocessingml.document", "application/vnd.openxmlformats-officedocument.wordprocessingml.template",
    "application/vnd.rar", "application/x-7z-compressed",
    "application/x-csv", "application/x-gtar",
    "application/x-gzip", "application/xml",
    "application/x-pdf", "application/x-rar-compressed",
    "application/x-tar", "application/x-yaml",
    "application/x-zip-compressed", "application/yaml",
    "application/zip", "application/zip-compressed",
    "text/comma-separated-values", "text/csv",
    "text/json", "text/plain",
    "text/x-comma-separated-values", "text/x-csv",
    "text/x-yaml", "text/yaml",
    };
    return kList;
}

// multimedia families never worth downloading
inline const std::vector<std::string>& default_mime_blocklist() {
    static const std::vector<std::string> kList = {"image/*", "audio/*", "video/*"};
    return kList;
}

// URL extensions associated with the blocklisted MIME families
inline const std::vector<std::string>& default_extension_blocklist() {
    static const std::vector<std::string> kList = {
    ".3g2", ".3ga", ".3gp2", ".3gp", ".3gpa", ".3gpp2", ".3gpp", ".aac",
    ".aacp", ".adp", ".aff", ".aif", ".aiff", ".arw", ".asf", ".asx",
    ".avi", ".avif", ".avifs", ".bmp", ".btif", ".cgm", ".cmx", ".cr2",
    ".crw", ".dcr", ".djv", ".djvu", ".dng", ".dts", ".dtshd", ".dwg",
    ".dxf", ".ecelp4800", ".ecelp7470", ".ecelp9600", ".eol", ".erf", ".f4v", ".fbs",
    ".fh4", ".fh5", ".fh7", ".fh", ".fhc", ".flac", ".fli", ".flv",
    ".fpx", ".fst", ".fvt", ".g3", ".gif", ".h261", ".h263", ".h264",
    ".heic", ".heif", ".icns", ".ico", ".ief", ".jfi", ".jfif-tbnl", ".jfif",
    ".jif", ".jpe", ".jpeg", ".jpg", ".jpgm", ".jpgv", ".jpm", ".k25",
    ".kar", ".kdc", ".lvp", ".m1v", ".m2a", ".m2v", ".m3a", ".m3u",
    ".m4a", ".m4b", ".m4p", ".m4r", ".m4u", ".m4v", ".mdi", ".mid",
    ".midi", ".mj2", ".mjp2", ".mka", ".mkv", ".mmr", ".mov", ".movie",
    ".mp2", ".mp2a", ".mp3", ".mp4", ".mp4v", ".mpa", ".mpe", ".mpeg",
    ".mpg4", ".mpg", ".mpga", ".mrw", ".mxu", ".nef", ".npx", ".oga",
    ".ogg", ".ogv", ".opus", ".orf", ".pbm", ".pct", ".pcx", ".pef",
    ".pgm", ".pic", ".pjpg", ".png", ".pnm", ".ppm", ".psd", ".ptx",
    ".pya", ".pyv", ".qt", ".ra", ".raf", ".ram", ".ras", ".raw",
    ".rgb", ".rlc", ".rmi", ".rmp", ".rw2", ".rwl", ".snd", ".spx",
    ".sr2", ".srf", ".svg", ".svgz", ".tif", ".tiff", ".ts", ".viv",
    ".wav", ".wax", ".wbmp", ".weba", ".webm", ".webp", ".wm", ".wma",
    ".wmv", ".wmx", ".wvx", ".x3f", ".xbm", ".xif", ".xpm", ".xwd",
    };
    return kList;
}

inline bool mime_in(std::string_view mime, const std::vector<std::string>& list) {
    for (const auto& m : list)
        if (m == mime) return true;
    return false;
}

// patterns are either exact types or "family/*"
inline bool mime_blocklisted(std::string_view mime, const std::vector<std::string>& patterns) {
    for (const auto& p : patterns) {
        if (p.size() >= 2 && p.compare(p.size() - 2, 2, "/*") == 0) {
            std::string_view fam(p.data(), p.size() - 1);  // keep the slash
            if (mime.size() >= fam.size() && mime.compare(0, fam.size(), fam) == 0) return true;
        } else if (mime == p) {
            return true;
        }
    }
    return false;
}

inline bool mime_is_html(std::string_view mime) {
    return mime.find("html") != std::string_view::npos;
}

}  // namespace fcrawl
