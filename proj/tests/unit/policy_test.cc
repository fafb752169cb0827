#include "edparse/policy.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "edparse/evaluation.h"
#include "testing/fixtures.h"
#include "testing/synthetic.h"

namespace edparse {
namespace {

using testing::LoadFixture;
using testing::LoadSingle;

// Picks uniformly among the legal transitions and abstains now and then.
class RandomPolicy : public Policy {
 public:
  RandomPolicy(std::uint64_t seed, std::vector<std::string> labels,
               int abstain_one_in)
      : rng_(seed), labels_(std::move(labels)), abstain_(abstain_one_in) {}

  std::vector<std::string> EdgeLabels() const override { return labels_; }
  std::optional<Transition> Choose(const Configuration&,
                                   std::span<const Transition> legal) override {
    if (abstain_ > 0 && testing::Uniform(rng_, 1, abstain_) == 1) {
      return std::nullopt;
    }
    return legal[testing::Uniform(rng_, 0, static_cast<int>(legal.size()) - 1)];
  }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> labels_;
  int abstain_;
};

class IllegalPolicy : public Policy {
 public:
  std::vector<std::string> EdgeLabels() const override { return {}; }
  std::optional<Transition> Choose(const Configuration&,
                                   std::span<const Transition>) override {
    return Transition::Reduce1();
  }
};

TEST(ParseTest, OraclePolicyReproducesGold) {
  Document doc = LoadFixture("synthetic50.conllu");
  doc.push_back(LoadSingle("figure1.conllu"));
  doc.push_back(LoadSingle("figure2.conllu"));
  for (const Sentence& s : doc) {
    const EnhancedGraph gold = ExtractGraph(s);
    OraclePolicy policy(gold);
    const ParseResult result = Parse(s, policy);
    const OracleResult oracle = OracleSequence(gold, s.WordCount());
    EXPECT_EQ(result.trace, oracle.steps) << s.SentId();
    EXPECT_TRUE(result.report.empty()) << s.SentId();
    EXPECT_EQ(result.graph, oracle.graph()) << s.SentId();
    EXPECT_EQ(CollapseNulls(result.graph), CollapseNulls(gold)) << s.SentId();
    if (gold.NullNodes().empty()) {
      EXPECT_EQ(result.graph, gold);
    }
  }
}

TEST(ParseTest, ShiftPolicyYieldsOrphans) {
  const Sentence s = LoadSingle("figure1.conllu");
  ShiftPolicy policy;
  const ParseResult result = Parse(s, policy);
  EXPECT_TRUE(Validate(result.graph).empty());
  EXPECT_EQ(result.trace.size(), 8u);
  EXPECT_TRUE(result.report.premature_finish);
  ASSERT_EQ(result.report.attached_nodes.size(), 8u);
  for (const Arc& arc : result.graph.arcs()) {
    EXPECT_EQ(arc.head, NodeId::Root());
    EXPECT_EQ(arc.label, kOrphanLabel);
  }
}

TEST(ParseTest, IllegalChoiceThrows) {
  const Sentence s = LoadSingle("figure1.conllu");
  IllegalPolicy policy;
  EXPECT_THROW(Parse(s, policy), PolicyError);
}

TEST(ParseTest, TotalOnRandomPolicies) {
  const Document doc = testing::GenerateTreebank(60, 11);
  const LabelInventory inventory = BuildLabelInventory(doc);
  for (int i = 0; i < 300; ++i) {
    const Sentence& s = doc[i % doc.size()];
    const std::vector<std::string> labels =
        i % 3 == 0 ? std::vector<std::string>{} : inventory.labels;
    RandomPolicy policy(i, labels, i % 2 == 0 ? 0 : 40);
    ParseOptions options;
    options.budget_multiplier = 1 + i % 6;
    const ParseResult result = Parse(s, policy, options);
    ASSERT_TRUE(Validate(result.graph).empty()) << i;
    ASSERT_LE(static_cast<int>(result.trace.size()),
              options.budget_multiplier * s.WordCount());
    for (const Arc& arc : result.graph.arcs()) {
      if (arc.label == kOrphanLabel) continue;
      ASSERT_TRUE(result.final_config.HasArc(arc.head, arc.dependent,
                                             arc.label));
    }
    // Output always injects back into a well-formed sentence.
    const Sentence out = InjectGraph(s, result.graph);
    ASSERT_EQ(ParseConllu(SerializeConllu({out})), Document{out});
  }
}

TEST(ParseTest, MemorizedModelParsesItsSentence) {
  const Sentence s = LoadSingle("figure2.conllu");
  TrainOptions options;
  options.epochs = 10;
  const LinearModel model = Train({s}, options).model;
  ModelPolicy policy(model);
  const ParseResult result = Parse(s, policy);
  EXPECT_TRUE(result.report.empty());
  EXPECT_EQ(Elas({s}, {InjectGraph(s, result.graph)}).f1(), 1.0);
}

TEST(LabelInventoryTest, Figure2) {
  const Sentence s = LoadSingle("figure2.conllu");
  const LabelInventory inventory = BuildLabelInventory({s});
  EXPECT_EQ(inventory.labels.size(), 15u);
  EXPECT_EQ(inventory.TransitionCount(), 36);
  EXPECT_EQ(inventory.with_suffix, 5);
  EXPECT_EQ(inventory.counts.at("det"), 3);
  std::int64_t total = 0;
  for (const auto& [label, count] : inventory.counts) total += count;
  EXPECT_EQ(total, static_cast<std::int64_t>(ExtractGraph(s).arcs().size()));
  EXPECT_TRUE(std::is_sorted(inventory.labels.begin(), inventory.labels.end()));
}

TEST(LabelInventoryTest, Empty) {
  const LabelInventory inventory = BuildLabelInventory({});
  EXPECT_TRUE(inventory.labels.empty());
  EXPECT_EQ(inventory.TransitionCount(), 6);
}

TEST(CopyTreeTest, BasicTreeOnly) {
  const Sentence s = LoadSingle("figure2.conllu");
  const EnhancedGraph g = CopyTreeBaseline(s);
  EXPECT_TRUE(g.NullNodes().empty());
  EXPECT_EQ(g.arcs().size(), 20u);
  for (int i = 1; i <= 20; ++i) {
    EXPECT_EQ(g.HeadsOf(NodeId::Word(i)),
              (std::set<LabeledNeighbor>{{*s.Word(i).head, s.Word(i).deprel}}));
  }
  EXPECT_TRUE(Validate(g).empty());
}

TEST(CopyTreeTest, MissingHeadThrows) {
  Sentence s = LoadSingle("figure1.conllu");
  for (TokenRow& row : s.rows) {
    if (row.is_word() && row.node() == NodeId::Word(4)) row.head.reset();
  }
  EXPECT_THROW(CopyTreeBaseline(s), GraphError);
}

}  // namespace
}  // namespace edparse
