#include "speechbelt/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "speechbelt/error.hpp"

namespace speechbelt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        raise(ErrorCode::IoError, path.string() + ":" + std::to_string(line_no) +
                                      ": cannot parse number '" + field + "'");
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        raise(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<SensorRecord> read_recording_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "t,pressure,ax,ay,az")
        raise(ErrorCode::IoError,
              path.string() + ": expected header 't,pressure,ax,ay,az'");

    std::vector<SensorRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 5)
            raise(ErrorCode::IoError,
                  path.string() + ":" + std::to_string(i + 1) + ": expected 5 fields");

        SensorRecord rec;
        rec.timestamp = parse_double(fields[0], path, i + 1);
        if (!fields[1].empty()) rec.pressure = parse_double(fields[1], path, i + 1);
        const bool any_accel =
            !fields[2].empty() || !fields[3].empty() || !fields[4].empty();
        const bool all_accel =
            !fields[2].empty() && !fields[3].empty() && !fields[4].empty();
        if (any_accel && !all_accel)
            raise(ErrorCode::IoError, path.string() + ":" + std::to_string(i + 1) +
                                          ": acceleration needs all three axes");
        if (all_accel)
            rec.accel = std::array<double, 3>{parse_double(fields[2], path, i + 1),
                                              parse_double(fields[3], path, i + 1),
                                              parse_double(fields[4], path, i + 1)};
        records.push_back(rec);
    }
    return records;
}

void write_recording_csv(const std::filesystem::path& path,
                         std::span<const SensorRecord> records) {
    std::string out = "t,pressure,ax,ay,az\n";
    for (const auto& rec : records) {
        out += format_double(rec.timestamp);
        out += ',';
        if (rec.pressure) out += format_double(*rec.pressure);
        if (rec.accel) {
            for (double v : *rec.accel) {
                out += ',';
                out += format_double(v);
            }
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    write_text_file(path, out);
}

AnnotationTrack read_annotations_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "start_s,end_s")
        raise(ErrorCode::IoError, path.string() + ": expected header 'start_s,end_s'");

    AnnotationTrack track;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 2)
            raise(ErrorCode::IoError,
                  path.string() + ":" + std::to_string(i + 1) + ": expected 2 fields");
        track.intervals.push_back(
            {parse_double(fields[0], path, i + 1), parse_double(fields[1], path, i + 1)});
    }
    track.validate();
    return track;
}

void write_annotations_csv(const std::filesystem::path& path, const AnnotationTrack& track) {
    std::string out = "start_s,end_s\n";
    for (const auto& iv : track.intervals) {
        out += format_double(iv.start);
        out += ',';
        out += format_double(iv.end);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_matrix_csv(const std::filesystem::path& path, const FeatureMatrix& matrix) {
    std::string out = "start_time";
    for (const auto& name : matrix.column_names) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        out += format_double(r < matrix.start_times.size() ? matrix.start_times[r] : 0.0);
        for (double v : matrix.rows[r]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_predictions_csv(const std::filesystem::path& path,
                           std::span<const double> start_times, std::span<const Label> labels) {
    std::string out = "start_time,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += format_double(start_times[i]);
        out += ',';
        out += labels[i] == Label::Speech ? '1' : '0';
        out += '\n';
    }
    write_text_file(path, out);
}

void write_prediction_trace_csv(const std::filesystem::path& path,
                                std::span<const double> start_times,
                                std::span<const Label> predicted,
                                std::span<const Label> truth) {
    std::string out = "start_time,predicted,truth\n";
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        out += format_double(start_times[i]);
        out += ',';
        out += predicted[i] == Label::Speech ? '1' : '0';
        out += ',';
        out += truth[i] == Label::Speech ? '1' : '0';
        out += '\n';
    }
    write_text_file(path, out);
}

} // namespace speechbelt
