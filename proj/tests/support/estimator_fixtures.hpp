// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Generated by make_estimator_fixtures.py; do not edit.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace ccqg::testing {

struct EstimatorFixture {
  std::string name;
  std::string question_conllu;
  std::string passage_conllu;
  std::array<std::size_t, 2> answer_span;
  std::array<double, 5> expected;
};

inline const std::vector<EstimatorFixture>& estimator_fixtures() {
  static const std::vector<EstimatorFixture> fixtures{
    {"no relations, two-sentence passage",
     R"conllu(# doc_id = fx0#question
# text = Who wrote it ?
1	Who	who	PRON	_	_	0	root	_	_
2	wrote	wrote	VERB	_	_	1	dep	_	_
3	it	it	PRON	_	_	1	dep	_	_
4	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx0#passage
# text = Ada wrote poems .
1	Ada	ada	PROPN	_	_	0	root	_	NER=B-PER
2	wrote	wrote	VERB	_	_	1	dep	_	_
3	poems	poems	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Byron praised poems loudly .
1	Byron	byron	PROPN	_	_	0	root	_	NER=B-PER
2	praised	praised	VERB	_	_	1	dep	_	_
3	poems	poems	NOUN	_	_	1	dep	_	_
4	loudly	loudly	ADV	_	_	1	dep	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {0, 1},
     {1.0, 0.0, 1.5244201849205463, 3.0, 9.0}},
    {"clause and modifier counts",
     R"conllu(# doc_id = fx1#question
# text = Why did ancient Rome say that old walls fell ?
1	Why	why	ADV	_	_	2	advmod	_	_
2	did	did	AUX	_	_	0	root	_	_
3	ancient	ancient	ADJ	_	_	2	amod	_	_
4	Rome	rome	PROPN	_	_	2	nsubj	_	NER=B-LOC
5	say	say	VERB	_	_	2	ccomp	_	_
6	that	that	SCONJ	_	_	2	dep	_	_
7	old	old	ADJ	_	_	2	amod	_	_
8	walls	walls	NOUN	_	_	2	dep	_	_
9	fell	fell	VERB	_	_	2	advcl	_	_
10	?	?	PUNCT	_	_	2	dep	_	_

)conllu",
     R"conllu(# doc_id = fx1#passage
# text = Rome built walls .
1	Rome	rome	PROPN	_	_	0	root	_	NER=B-LOC
2	built	built	VERB	_	_	1	dep	_	_
3	walls	walls	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = The walls fell later .
1	The	the	DET	_	_	0	root	_	_
2	walls	walls	NOUN	_	_	1	dep	_	_
3	fell	fell	VERB	_	_	1	dep	_	_
4	later	later	ADV	_	_	1	dep	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {2, 3},
     {3.0, 3.0, 1.6242069697654076, 1.0, 1.0}},
    {"possessive modifier and relative clause",
     R"conllu(# doc_id = fx2#question
# text = Whose house stands near Oslo ?
1	Whose	whose	PRON	_	_	2	nmod:poss	_	_
2	house	house	NOUN	_	_	0	root	_	_
3	stands	stands	VERB	_	_	2	acl:relcl	_	_
4	near	near	ADP	_	_	2	dep	_	_
5	Oslo	oslo	PROPN	_	_	2	nmod	_	NER=B-LOC
6	?	?	PUNCT	_	_	2	dep	_	_

)conllu",
     R"conllu(# doc_id = fx2#passage
# text = Oslo has houses .
1	Oslo	oslo	PROPN	_	_	0	root	_	NER=B-LOC
2	has	has	VERB	_	_	1	dep	_	_
3	houses	houses	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = A house stands near Oslo .
1	A	a	DET	_	_	0	root	_	_
2	house	house	NOUN	_	_	1	dep	_	_
3	stands	stands	VERB	_	_	1	dep	_	_
4	near	near	ADP	_	_	1	dep	_	_
5	Oslo	oslo	PROPN	_	_	1	dep	_	NER=B-LOC
6	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {7, 8},
     {2.0, 2.0, 1.6810421286893509, 1.0, 0.0}},
    {"single-sentence passage",
     R"conllu(# doc_id = fx3#question
# text = What did Marie Curie find ?
1	What	what	PRON	_	_	0	root	_	_
2	did	did	AUX	_	_	1	dep	_	_
3	Marie	marie	PROPN	_	_	1	dep	_	NER=B-PER
4	Curie	curie	PROPN	_	_	1	dep	_	NER=I-PER
5	find	find	VERB	_	_	1	dep	_	_
6	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx3#passage
# text = Marie Curie found radium in Paris .
1	Marie	marie	PROPN	_	_	0	root	_	NER=B-PER
2	Curie	curie	PROPN	_	_	1	dep	_	NER=I-PER
3	found	found	VERB	_	_	1	dep	_	_
4	radium	radium	NOUN	_	_	1	dep	_	_
5	in	in	ADP	_	_	1	dep	_	_
6	Paris	paris	PROPN	_	_	1	dep	_	NER=B-LOC
7	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {3, 4},
     {1.0, 0.0, 1000000.0, 2.0, 2.0}},
    {"two identical sentences",
     R"conllu(# doc_id = fx4#question
# text = Where is Lima ?
1	Where	where	ADV	_	_	0	root	_	_
2	is	is	AUX	_	_	1	dep	_	_
3	Lima	lima	PROPN	_	_	1	dep	_	NER=B-LOC
4	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx4#passage
# text = Lima lies coastal .
1	Lima	lima	PROPN	_	_	0	root	_	NER=B-LOC
2	lies	lies	VERB	_	_	1	dep	_	_
3	coastal	coastal	ADJ	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Lima lies coastal .
1	Lima	lima	PROPN	_	_	0	root	_	NER=B-LOC
2	lies	lies	VERB	_	_	1	dep	_	_
3	coastal	coastal	ADJ	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {2, 3},
     {1.0, 0.0, 1000000.0, 1.0, 1.0}},
    {"two shared entities of six mentions",
     R"conllu(# doc_id = fx5#question
# text = Did Anna meet Ben ?
1	Did	did	AUX	_	_	0	root	_	_
2	Anna	anna	PROPN	_	_	1	dep	_	NER=B-PER
3	meet	meet	VERB	_	_	1	dep	_	_
4	Ben	ben	PROPN	_	_	1	dep	_	NER=B-PER
5	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx5#passage
# text = Anna met Carl .
1	Anna	anna	PROPN	_	_	0	root	_	NER=B-PER
2	met	met	VERB	_	_	1	dep	_	_
3	Carl	carl	PROPN	_	_	1	dep	_	NER=B-PER
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Anna and Ben left Dover with Carl .
1	Anna	anna	PROPN	_	_	0	root	_	NER=B-PER
2	and	and	CCONJ	_	_	1	dep	_	_
3	Ben	ben	PROPN	_	_	1	dep	_	NER=B-PER
4	left	left	VERB	_	_	1	dep	_	_
5	Dover	dover	PROPN	_	_	1	dep	_	NER=B-LOC
6	with	with	ADP	_	_	1	dep	_	_
7	Carl	carl	PROPN	_	_	1	dep	_	NER=B-PER
8	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {2, 3},
     {1.0, 0.0, 2.2281034649249354, 4.0, 2.0}},
    {"sole passage entity",
     R"conllu(# doc_id = fx6#question
# text = When did Kyoto grow ?
1	When	when	ADV	_	_	0	root	_	_
2	did	did	AUX	_	_	1	dep	_	_
3	Kyoto	kyoto	PROPN	_	_	1	dep	_	NER=B-LOC
4	grow	grow	VERB	_	_	1	dep	_	_
5	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx6#passage
# text = Kyoto grew fast .
1	Kyoto	kyoto	PROPN	_	_	0	root	_	NER=B-LOC
2	grew	grew	VERB	_	_	1	dep	_	_
3	fast	fast	ADV	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Kyoto traded silk .
1	Kyoto	kyoto	PROPN	_	_	0	root	_	NER=B-LOC
2	traded	traded	VERB	_	_	1	dep	_	_
3	silk	silk	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Kyoto hosted monks .
1	Kyoto	kyoto	PROPN	_	_	0	root	_	NER=B-LOC
2	hosted	hosted	VERB	_	_	1	dep	_	_
3	monks	monks	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {2, 3},
     {1.0, 0.0, 1.6348575072720657, 1.0, 1.0}},
    {"no shared entities",
     R"conllu(# doc_id = fx7#question
# text = Who painted Guernica ?
1	Who	who	PRON	_	_	0	root	_	_
2	painted	painted	VERB	_	_	1	dep	_	_
3	Guernica	guernica	PROPN	_	_	1	dep	_	NER=B-WORK
4	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx7#passage
# text = Ana Bo Cy met .
1	Ana	ana	PROPN	_	_	0	root	_	NER=B-PER
2	Bo	bo	PROPN	_	_	1	dep	_	NER=B-PER
3	Cy	cy	PROPN	_	_	1	dep	_	NER=B-PER
4	met	met	VERB	_	_	1	dep	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

# text = Di Ed Fa sang .
1	Di	di	PROPN	_	_	0	root	_	NER=B-PER
2	Ed	ed	PROPN	_	_	1	dep	_	NER=B-PER
3	Fa	fa	PROPN	_	_	1	dep	_	NER=B-PER
4	sang	sang	VERB	_	_	1	dep	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

# text = Gu Ha Io danced .
1	Gu	gu	PROPN	_	_	0	root	_	NER=B-PER
2	Ha	ha	PROPN	_	_	1	dep	_	NER=B-PER
3	Io	io	PROPN	_	_	1	dep	_	NER=B-PER
4	danced	danced	VERB	_	_	1	dep	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {3, 4},
     {1.0, 0.0, 1.0970053631858165, 10.0, 15.0}},
    {"entity inside the answer span",
     R"conllu(# doc_id = fx8#question
# text = Which city hosts Nile cruises ?
1	Which	which	DET	_	_	0	root	_	_
2	city	city	NOUN	_	_	1	dep	_	_
3	hosts	hosts	VERB	_	_	1	dep	_	_
4	Nile	nile	PROPN	_	_	1	dep	_	NER=B-LOC
5	cruises	cruises	NOUN	_	_	1	dep	_	_
6	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx8#passage
# text = Cruises on the Nile start in Luxor .
1	Cruises	cruises	NOUN	_	_	0	root	_	_
2	on	on	ADP	_	_	1	dep	_	_
3	the	the	DET	_	_	1	dep	_	_
4	Nile	nile	PROPN	_	_	1	dep	_	NER=B-LOC
5	start	start	VERB	_	_	1	dep	_	_
6	in	in	ADP	_	_	1	dep	_	_
7	Luxor	luxor	PROPN	_	_	1	dep	_	NER=B-LOC
8	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {3, 4},
     {1.0, 0.0, 1000000.0, 2.0, 0.0}},
    {"entities before and after the answer",
     R"conllu(# doc_id = fx9#question
# text = How far is Turin from Milan ?
1	How	how	ADV	_	_	2	advmod	_	_
2	far	far	ADV	_	_	0	root	_	_
3	is	is	AUX	_	_	2	dep	_	_
4	Turin	turin	PROPN	_	_	2	dep	_	NER=B-LOC
5	from	from	ADP	_	_	2	dep	_	_
6	Milan	milan	PROPN	_	_	2	dep	_	NER=B-LOC
7	?	?	PUNCT	_	_	2	dep	_	_

)conllu",
     R"conllu(# doc_id = fx9#passage
# text = Turin sits west and trains take one hour
1	Turin	turin	PROPN	_	_	0	root	_	NER=B-LOC
2	sits	sits	VERB	_	_	1	dep	_	_
3	west	west	ADV	_	_	1	dep	_	_
4	and	and	CCONJ	_	_	1	dep	_	_
5	trains	trains	NOUN	_	_	1	dep	_	_
6	take	take	VERB	_	_	1	dep	_	_
7	one	one	NUM	_	_	1	dep	_	_
8	hour	hour	NOUN	_	_	1	dep	_	_

# text = to reach it from the big northern hub of very busy Milan .
1	to	to	ADP	_	_	0	root	_	_
2	reach	reach	VERB	_	_	1	dep	_	_
3	it	it	PRON	_	_	1	dep	_	_
4	from	from	ADP	_	_	1	dep	_	_
5	the	the	DET	_	_	1	dep	_	_
6	big	big	ADJ	_	_	1	dep	_	_
7	northern	northern	ADJ	_	_	1	dep	_	_
8	hub	hub	NOUN	_	_	1	dep	_	_
9	of	of	ADP	_	_	1	dep	_	_
10	very	very	ADV	_	_	1	dep	_	_
11	busy	busy	ADJ	_	_	1	dep	_	_
12	Milan	milan	PROPN	_	_	1	dep	_	NER=B-LOC
13	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {6, 8},
     {1.0, 1.0, 1.0870555861662496, 2.0, 8.0}},
    {"passage without entities, three sentences",
     R"conllu(# doc_id = fx10#question
# text = What do bees make ?
1	What	what	PRON	_	_	0	root	_	_
2	do	do	AUX	_	_	1	dep	_	_
3	bees	bees	NOUN	_	_	1	dep	_	_
4	make	make	VERB	_	_	1	dep	_	_
5	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx10#passage
# text = Bees make honey .
1	Bees	bees	NOUN	_	_	0	root	_	_
2	make	make	VERB	_	_	1	dep	_	_
3	honey	honey	NOUN	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Honey tastes sweet .
1	Honey	honey	NOUN	_	_	0	root	_	_
2	tastes	tastes	VERB	_	_	1	dep	_	_
3	sweet	sweet	ADJ	_	_	1	dep	_	_
4	.	.	PUNCT	_	_	1	dep	_	_

# text = Wax comes from bees too .
1	Wax	wax	NOUN	_	_	0	root	_	_
2	comes	comes	VERB	_	_	1	dep	_	_
3	from	from	ADP	_	_	1	dep	_	_
4	bees	bees	NOUN	_	_	1	dep	_	_
5	too	too	ADV	_	_	1	dep	_	_
6	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {2, 3},
     {1.0, 0.0, 1.4013064348046278, 1.0, 14.0}},
    {"multi-token entity, two question sentences",
     R"conllu(# doc_id = fx11#question
# text = New York is big .
1	New	new	PROPN	_	_	0	root	_	NER=B-LOC
2	York	york	PROPN	_	_	1	dep	_	NER=I-LOC
3	is	is	AUX	_	_	1	dep	_	_
4	big	big	ADJ	_	_	1	amod	_	_
5	.	.	PUNCT	_	_	1	dep	_	_

# text = Who founded it ?
1	Who	who	PRON	_	_	0	root	_	_
2	founded	founded	VERB	_	_	1	dep	_	_
3	it	it	PRON	_	_	1	dep	_	_
4	?	?	PUNCT	_	_	1	dep	_	_

)conllu",
     R"conllu(# doc_id = fx11#passage
# text = Dutch settlers founded New York early .
1	Dutch	dutch	ADJ	_	_	0	root	_	NER=B-NORP
2	settlers	settlers	NOUN	_	_	1	dep	_	_
3	founded	founded	VERB	_	_	1	dep	_	_
4	New	new	PROPN	_	_	1	dep	_	NER=B-LOC
5	York	york	PROPN	_	_	1	dep	_	NER=I-LOC
6	early	early	ADV	_	_	1	dep	_	_
7	.	.	PUNCT	_	_	1	dep	_	_

# text = Later New York grew under English rule .
1	Later	later	ADV	_	_	0	root	_	_
2	New	new	PROPN	_	_	1	dep	_	NER=B-LOC
3	York	york	PROPN	_	_	1	dep	_	NER=I-LOC
4	grew	grew	VERB	_	_	1	dep	_	_
5	under	under	ADP	_	_	1	dep	_	_
6	English	english	ADJ	_	_	1	dep	_	NER=B-NORP
7	rule	rule	NOUN	_	_	1	dep	_	_
8	.	.	PUNCT	_	_	1	dep	_	_

)conllu",
     {0, 2},
     {2.0, 1.0, 1.6242069697654076, 2.0, 1.0}},
  };
  return fixtures;
}

}  // namespace ccqg::testing
