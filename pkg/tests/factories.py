import factory

from papersuite.models import CaseResult, SuiteRun


class SuiteRunFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = SuiteRun

    status = 'passed'
    threads = 1
    case_count = 1
    seconds = 1.5


class CaseResultFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = CaseResult

    run = factory.SubFactory(SuiteRunFactory)
    case = factory.Sequence(lambda n: f'case_{n}')
    status = 'pass'
    anchor = 'an exact sequence'
    seconds = 0.25
