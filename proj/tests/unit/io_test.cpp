#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "graphjoin/io/csv.hpp"
#include "graphjoin/io/graph_files.hpp"
#include "graphjoin/logical_join.hpp"
#include "graphjoin/random_graphs.hpp"
#include "researcher_citation.hpp"

namespace graphjoin::io {
namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  return Error(ErrorCode::kValidation, "");
}

TEST(Csv, NullVersusEmptyString) {
  const auto records = parse_csv("a,,\"\",\"x,y\",\"say \"\"hi\"\"\"\n");
  ASSERT_EQ(records.size(), 1u);
  const auto& f = records[0].fields;
  ASSERT_EQ(f.size(), 5u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], std::nullopt);
  EXPECT_EQ(f[2], "");
  EXPECT_EQ(f[3], "x,y");
  EXPECT_EQ(f[4], "say \"hi\"");
  EXPECT_EQ(format_csv_record(f), "a,,\"\",\"x,y\",\"say \"\"hi\"\"\"");
}

TEST(Csv, LinesBlankAndMultiline) {
  const auto records = parse_csv("h\r\n\n\"two\nlines\"\nlast");
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].line, 1u);
  EXPECT_EQ(records[1].line, 3u);
  EXPECT_EQ(records[1].fields[0], "two\nlines");
  EXPECT_EQ(records[2].line, 5u);
}

TEST(Csv, Malformed) {
  const Error unterminated = error_of([] { parse_csv("a\n\"open", "v.csv"); });
  EXPECT_EQ(unterminated.code(), ErrorCode::kParse);
  EXPECT_NE(std::string(unterminated.what()).find("v.csv:2"), std::string::npos);
  EXPECT_EQ(error_of([] { parse_csv("a\"b\n"); }).code(), ErrorCode::kParse);
}

TEST(Csv, FieldRoundTrip) {
  for (const CsvField& f : {CsvField{}, CsvField{""}, CsvField{"plain"}, CsvField{" pad "},
                            CsvField{"q\"q"}, CsvField{"a\nb"}, CsvField{"c,d"}}) {
    const auto back = parse_csv(format_csv_record({f, CsvField{"z"}}));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].fields[0], f);
  }
}

TEST(GraphFiles, LoadsSmallFixture) {
  GraphDatabase db;
  const LoadedGraph g = load_graph_text(db, "id,Name,Age\n10,Alice,30\n20,Bob,\n", "10\t20\n",
                                        {.vertex_labels = {"User"}, .tag_prefix = "L:"});
  const GraphView view = db.get_graph(g.component);
  ASSERT_EQ(view.vertices().size(), 2u);
  ASSERT_EQ(view.edges().size(), 1u);
  EXPECT_EQ(g.header, (std::vector<std::string>{"id", "Name", "Age"}));
  const ElementId alice = g.vertex_by_id.at(10), bob = g.vertex_by_id.at(20);
  EXPECT_EQ(db.payload(alice), (Tuple{{"Name", "Alice"}, {"Age", "30"}}));
  EXPECT_EQ(db.payload(bob), (Tuple{{"Name", "Bob"}}));
  EXPECT_EQ(db.labels(alice), LabelSet{"User"});
  EXPECT_EQ(db.tag(alice), "L:10");
  EXPECT_EQ(db.endpoints(view.edges()[0]), (Endpoints{alice, bob}));
}

TEST(GraphFiles, KeepIdAndPrefix) {
  GraphDatabase db;
  const LoadedGraph g = load_graph_text(
      db, "id,dob,email\n1,1970-01-01,x@y\n", "",
      {.keep_id = true, .attribute_prefix = "r_", .unprefixed = {"dob"}});
  EXPECT_EQ(g.header, (std::vector<std::string>{"r_id", "dob", "r_email"}));
  EXPECT_EQ(db.payload(g.vertex_by_id.at(1)),
            (Tuple{{"r_id", "1"}, {"dob", "1970-01-01"}, {"r_email", "x@y"}}));
}

TEST(GraphFiles, ErrorsNameFileAndLine) {
  GraphDatabase db;
  const Error dangling = error_of([&] {
    load_graph_text(db, "id,a\n1,x\n2,y\n", "1\t2\n1\t99\n", {}, "v.csv", "e.tsv");
  });
  EXPECT_EQ(dangling.code(), ErrorCode::kDanglingEndpoint);
  EXPECT_NE(std::string(dangling.what()).find("e.tsv:2"), std::string::npos) << dangling.what();

  const Error duplicate =
      error_of([&] { load_graph_text(db, "id,a\n1,x\n1,y\n", "", {}, "v.csv", "e.tsv"); });
  EXPECT_EQ(duplicate.code(), ErrorCode::kDuplicateId);
  EXPECT_NE(std::string(duplicate.what()).find("v.csv:3"), std::string::npos);

  EXPECT_EQ(error_of([&] { load_graph_text(db, "", ""); }).code(), ErrorCode::kParse);
  EXPECT_EQ(error_of([&] { load_graph_text(db, "id,a\n1\n", ""); }).code(), ErrorCode::kParse);
  EXPECT_EQ(error_of([&] { load_graph_text(db, "id,a\nx,1\n", ""); }).code(), ErrorCode::kParse);
  EXPECT_EQ(error_of([&] { load_graph_text(db, "id,a,a\n1,2,3\n", ""); }).code(),
            ErrorCode::kParse);
  EXPECT_EQ(error_of([&] { load_graph_text(db, "id,a\n1,2\n", "1 1\n"); }).code(),
            ErrorCode::kParse);
  EXPECT_EQ(error_of([&] { load_graph_pair(db, "/nonexistent/v.csv", "/nonexistent/e.tsv"); })
                .code(),
            ErrorCode::kIo);
}

std::vector<Tuple> payloads(const GraphDatabase& db, ComponentId c) {
  std::vector<Tuple> out;
  for (ElementId v : db.get_graph(c).vertices()) out.push_back(db.payload(v));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(GraphFiles, WriteLoadWriteIsAFixpoint) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    GraphDatabase db;
    const LoadedSpec spec = add_graph(db, random_graph(rng, {.edge_payloads = false}), "A:");
    const GraphText first = format_graph(db, spec.component, {});
    GraphDatabase db2;
    const LoadedGraph back = load_graph_text(db2, first.vertex_csv, first.edge_tsv);
    ASSERT_EQ(payloads(db2, back.component), payloads(db, spec.component));
    ASSERT_EQ(db2.get_graph(back.component).edges().size(),
              db.get_graph(spec.component).edges().size());
    const GraphText second = format_graph(db2, back.component, {});
    ASSERT_EQ(second.vertex_csv, first.vertex_csv) << "trial " << trial;
    ASSERT_EQ(second.edge_tsv, first.edge_tsv);
  }
}

TEST(GraphFiles, EmptyResultIsHeaderOnly) {
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, {}, "A:");
  const GraphText text = format_graph(db, a.component, {.columns = {"Name"}});
  EXPECT_EQ(text.vertex_csv, "id,Name\n");
  EXPECT_EQ(text.edge_tsv, "");
}

TEST(GraphFiles, ResearcherCitationJoinWritesUnionColumns) {
  GraphDatabase db;
  const LoadedGraph left = load_graph_text(db, "id,Name\n0,Alice\n1,Bob\n", "0\t1\n",
                                           {.tag_prefix = "L:"});
  const LoadedGraph right =
      load_graph_text(db, "id,1Author,Title\n0,Alice,Graphs\n1,Bob,Joins\n", "0\t1\n",
                      {.tag_prefix = "R:"});
  const JoinResult r = logical::graph_join(
      db, left.component, right.component,
      {relational::ThetaPredicate::equalities({{"Name", "1Author"}}), EdgeSemantics::kConjunctive});
  const auto columns = union_columns(left.header, right.header);
  EXPECT_EQ(columns, (std::vector<std::string>{"Name", "1Author", "Title"}));

  const auto dir = std::filesystem::temp_directory_path() / "graphjoin_io_test";
  std::filesystem::remove_all(dir);
  write_join_result(db, r, dir.string(), columns);
  EXPECT_EQ(read_file((dir / "vertices.csv").string()),
            "id,Name,1Author,Title,provenance\n"
            "0,Alice,Alice,Graphs,L:0+R:0\n"
            "1,Bob,Bob,Joins,L:1+R:1\n");
  EXPECT_EQ(read_file((dir / "edges.tsv").string()), "0\t1\n");

  GraphDatabase reload;
  const LoadedGraph g = load_graph_pair(reload, (dir / "vertices.csv").string(),
                                        (dir / "edges.tsv").string());
  reload.validate();
  EXPECT_EQ(reload.get_graph(g.component).vertices().size(), 2u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace graphjoin::io
